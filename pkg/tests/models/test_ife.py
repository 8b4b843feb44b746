import numpy as np
import pytest

from ppife.models.cut import CutSegment
from ppife.models.ife import PiecewiseAffine, affine_values
from ppife.sides import Side, SideValues

SEGMENT = CutSegment(
    d=np.array([0.25, 0.0]),
    e=np.array([0.25, 0.75]),
    normal=np.array([1.0, 0.0]),
    tangent=np.array([0.0, -1.0]),
)


def _function() -> PiecewiseAffine:
    # 1 + 2x on the plus side, 1.25 + x on the minus side: continuous along x = 0.25
    return PiecewiseAffine(np.array([1.0, 2.0, 0.0]), np.array([1.25, 1.0, 0.0]), SEGMENT)


def test_affine_values() -> None:
    coefficients = np.array([[1.0, 2.0, 3.0], [0.0, 1.0, 0.0]])
    np.testing.assert_allclose(affine_values(coefficients, [[1.0, 1.0]]), [[6.0], [1.0]])


def test_piecewise_affine__values() -> None:
    function = _function()
    np.testing.assert_allclose(
        function.values([[1.0, 0.0], [0.0, 0.0]], [True, False]), [3.0, 1.25]
    )
    assert function([1.0, 0.0]) == pytest.approx(3.0)
    assert function([0.0, 0.0]) == pytest.approx(1.25)
    np.testing.assert_allclose(function.gradient(Side.PLUS), [2.0, 0.0])


def test_piecewise_affine__jumps() -> None:
    function = _function()
    np.testing.assert_allclose(function.jump([SEGMENT.d, SEGMENT.e]), [0.0, 0.0], atol=1e-15)
    assert function.flux_jump(SideValues(1.0, 2.0)) == pytest.approx(0.0)
    assert function.flux_jump(SideValues(1.0, 1.0)) == pytest.approx(1.0)


def test_piecewise_affine__piece() -> None:
    with pytest.raises(ValueError, match="plus or the minus side"):
        _ = _function().piece(Side.INTERFACE)


def test_piecewise_affine__arithmetic() -> None:
    function = _function()
    doubled = 2.0 * function
    np.testing.assert_allclose(doubled.plus, [2.0, 4.0, 0.0])
    np.testing.assert_allclose((doubled - function).minus, function.minus)
    np.testing.assert_allclose((function + function).plus, doubled.plus)

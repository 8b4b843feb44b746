import numpy as np
import pytest

from ppife.builders.ife3d import tangent_plane_cut
from ppife.models.ife3d import CutType, PiecewiseAffine3, SideQuadrature
from ppife.sides import Side

TETRAHEDRON = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


def test_cut_type__str() -> None:
    assert str(CutType.THREE_EDGE) == "three-edge"
    assert str(CutType.FOUR_EDGE) == "four-edge"


def test_tangent_plane_cut__sides() -> None:
    cut = tangent_plane_cut(TETRAHEDRON, [0.5, 0.0, 0.0], [1.0, 0.0, 0.0])
    assert cut.vertex_sides == (Side.MINUS, Side.PLUS, Side.MINUS, Side.MINUS)
    np.testing.assert_allclose(cut.frame @ cut.frame.T, np.eye(3), atol=1e-14)
    np.testing.assert_array_equal(cut.is_plus([[0.9, 0.0, 0.0], [0.1, 0.0, 0.0]]), [True, False])


def test_piecewise_affine3() -> None:
    cut = tangent_plane_cut(TETRAHEDRON, [0.5, 0.0, 0.0], [1.0, 0.0, 0.0])
    function = PiecewiseAffine3(
        plus=np.array([-0.5, 2.0, 0.0, 0.0]), minus=np.array([0.0, 1.0, 0.0, 0.0]), cut=cut
    )
    np.testing.assert_allclose(function.jump([[0.5, 0.3, 0.1]]), [0.0], atol=1e-15)
    np.testing.assert_allclose(function.gradient_jump(), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(
        function.values([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], [True, False]), [1.5, 0.0]
    )
    np.testing.assert_allclose(function.gradients(np.array([True, False]))[1], [1.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="plus or the minus side"):
        _ = function.piece(Side.INTERFACE)


def test_side_quadrature__volumes() -> None:
    quadrature = SideQuadrature(
        points=np.zeros((3, 3)),
        weights=np.array([0.1, 0.2, 0.3]),
        plus_mask=np.array([True, False, True]),
        plane_plus_mask=np.array([True, False, True]),
    )
    assert quadrature.volumes.plus == pytest.approx(0.4)
    assert quadrature.volumes.minus == pytest.approx(0.2)
    assert quadrature.integrate(np.array([1.0, 1.0, 2.0])) == pytest.approx(0.9)

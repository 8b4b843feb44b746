import numpy as np
import pytest

from ppife.helpers import (
    affine_coefficients,
    affine_gradients,
    affine_gradients_many,
    as_points,
    barycentric,
    diameter,
    normalize,
    rotate_clockwise,
    signed_area,
    simplex_volume,
)

TRIANGLE = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 1.0]])
TETRAHEDRON = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


def test_as_points() -> None:
    assert as_points([1.0, 2.0]).shape == (1, 2)
    assert as_points([[1.0, 2.0], [3.0, 4.0]]).shape == (2, 2)


def test_normalize() -> None:
    np.testing.assert_allclose(normalize([3.0, 4.0]), [0.6, 0.8])
    with pytest.raises(ValueError, match="zero vector"):
        _ = normalize([0.0, 0.0])


def test_rotate_clockwise() -> None:
    np.testing.assert_allclose(rotate_clockwise([1.0, 0.0]), [0.0, -1.0])
    np.testing.assert_allclose(rotate_clockwise([0.0, 1.0]), [1.0, 0.0])


def test_signed_area() -> None:
    assert signed_area(TRIANGLE) == pytest.approx(1.0)
    assert signed_area(TRIANGLE[::-1]) == pytest.approx(-1.0)


def test_simplex_volume() -> None:
    assert simplex_volume(TRIANGLE) == pytest.approx(1.0)
    assert simplex_volume(TETRAHEDRON) == pytest.approx(1.0 / 6.0)


def test_affine_coefficients__nodal() -> None:
    coefficients = affine_coefficients(TRIANGLE)
    values = coefficients[:, 0, np.newaxis] + coefficients[:, 1:] @ TRIANGLE.T
    np.testing.assert_allclose(values, np.eye(3), atol=1e-14)


def test_affine_gradients() -> None:
    gradients = affine_gradients(TRIANGLE)
    np.testing.assert_allclose(gradients.sum(axis=0), [0.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(gradients[1], [0.5, 0.0])
    np.testing.assert_allclose(gradients[2], [0.0, 1.0])


def test_affine_gradients_many() -> None:
    many = affine_gradients_many(np.stack([TRIANGLE, 2.0 * TRIANGLE]))
    np.testing.assert_allclose(many[0], affine_gradients(TRIANGLE))
    np.testing.assert_allclose(many[1], 0.5 * affine_gradients(TRIANGLE))


def test_barycentric() -> None:
    coordinates = barycentric(TRIANGLE, [[0.0, 0.0], [1.0, 0.5]])
    np.testing.assert_allclose(coordinates[0], [1.0, 0.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(coordinates[1], [0.0, 0.5, 0.5], atol=1e-14)


def test_diameter() -> None:
    assert diameter(TRIANGLE) == pytest.approx(np.sqrt(5.0))
    assert diameter(TETRAHEDRON) == pytest.approx(np.sqrt(2.0))

import numpy as np
from numpy.typing import ArrayLike, NDArray

FloatArray = NDArray[np.float64]
IntArray = NDArray[np.int64]


def as_points(points: ArrayLike) -> FloatArray:
    """Coerce to a float array, a single point becomes a (1, d) array."""
    array = np.asarray(points, dtype=float)
    return array[np.newaxis, :] if array.ndim == 1 else array


def normalize(vector: ArrayLike) -> FloatArray:
    array = np.asarray(vector, dtype=float)
    norm = float(np.linalg.norm(array))
    if norm == 0.0:
        raise ValueError("Cannot normalize a zero vector")
    return array / norm


def rotate_clockwise(vector: ArrayLike) -> FloatArray:
    """90 degrees clockwise rotation of a 2D vector."""
    x, y = np.asarray(vector, dtype=float)
    return np.array([y, -x])


def signed_area(triangle: ArrayLike) -> float:
    a, b, c = np.asarray(triangle, dtype=float)
    return 0.5 * float((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))


def simplex_volume(simplex: ArrayLike) -> float:
    """Unsigned measure of a triangle (2D) or tetrahedron (3D)."""
    vertices = np.asarray(simplex, dtype=float)
    edges = vertices[1:] - vertices[0]
    dimension = vertices.shape[1]
    return abs(float(np.linalg.det(edges))) / (2.0 if dimension == 2 else 6.0)


def affine_gradients(simplex: ArrayLike) -> FloatArray:
    """Gradients of the barycentric coordinates, one row per vertex."""
    vertices = np.asarray(simplex, dtype=float)
    # Rows of the inverse of [1 | x] are the affine coefficients (a, grad)
    matrix = np.hstack([np.ones((vertices.shape[0], 1)), vertices])
    coefficients = np.linalg.inv(matrix)
    return coefficients[1:].T


def affine_coefficients(simplex: ArrayLike) -> FloatArray:
    """Coefficients (a, grad) of the barycentric coordinates, one row per vertex."""
    vertices = np.asarray(simplex, dtype=float)
    matrix = np.hstack([np.ones((vertices.shape[0], 1)), vertices])
    return np.linalg.inv(matrix).T


def barycentric(simplex: ArrayLike, points: ArrayLike) -> FloatArray:
    """Barycentric coordinates of points, shape (n, d + 1)."""
    coefficients = affine_coefficients(simplex)
    points_array = as_points(points)
    return coefficients[:, 0] + points_array @ coefficients[:, 1:].T


def diameter(simplex: ArrayLike) -> float:
    vertices = np.asarray(simplex, dtype=float)
    differences = vertices[:, np.newaxis, :] - vertices[np.newaxis, :, :]
    return float(np.max(np.linalg.norm(differences, axis=-1)))


def affine_gradients_many(simplices: FloatArray) -> FloatArray:
    """Vectorised `affine_gradients`, shape (m, d + 1, d)."""
    ones = np.ones((*simplices.shape[:2], 1))
    coefficients = np.linalg.inv(np.concatenate([ones, simplices], axis=2))
    return coefficients[:, 1:, :].transpose(0, 2, 1)

"""Gauss rules on triangles, segments and tetrahedra."""

from dataclasses import dataclass
from functools import cache
import itertools

import numpy as np
import scipy.special
from numpy.typing import ArrayLike

from ppife.helpers import FloatArray


@dataclass(frozen=True)
class SimplexRule:
    """A quadrature rule on the reference simplex."""

    #: Exactness degree
    order: int
    #: Barycentric coordinates of the points, shape (k, d + 1)
    barycentric: FloatArray
    #: Weights, normalized to sum to 1
    weights: FloatArray

    def map(self, simplex: ArrayLike, measure: float) -> tuple[FloatArray, FloatArray]:
        """Physical points and weights on a simplex of the given measure."""
        vertices = np.asarray(simplex, dtype=float)
        return self.barycentric @ vertices, self.weights * measure

    def map_many(
        self, simplices: FloatArray, measures: FloatArray
    ) -> tuple[FloatArray, FloatArray]:
        """Vectorised `map`, returns shapes (m, k, d) and (m, k)."""
        points = np.einsum("kv,mvd->mkd", self.barycentric, simplices)
        return points, measures[:, np.newaxis] * self.weights[np.newaxis, :]


def _orbit(*coordinates: float) -> list[tuple[float, ...]]:
    return sorted(set(itertools.permutations(coordinates)))


def _rule(order: int, orbits: list[tuple[float, tuple[float, ...]]]) -> SimplexRule:
    points: list[tuple[float, ...]] = []
    weights: list[float] = []
    for weight, coordinates in orbits:
        for permutation in _orbit(*coordinates):
            points.append(permutation)
            weights.append(weight)
    return SimplexRule(order, np.array(points), np.array(weights))


@cache
def triangle_rule(order: int) -> SimplexRule:
    """Symmetric Gauss rule on a triangle, exact up to the given degree."""
    match order:
        case 1:
            return _rule(1, [(1.0, (1 / 3, 1 / 3, 1 / 3))])
        case 2:
            return _rule(2, [(1 / 3, (2 / 3, 1 / 6, 1 / 6))])
        case 4:
            return _rule(
                4,
                [
                    (
                        0.223381589678011,
                        (0.445948490915965, 0.445948490915965, 0.108103018168070),
                    ),
                    (
                        0.109951743655322,
                        (0.091576213509771, 0.091576213509771, 0.816847572980459),
                    ),
                ],
            )
        case 6:
            return _rule(
                6,
                [
                    (
                        0.116786275726379,
                        (0.249286745170910, 0.249286745170910, 0.501426509658179),
                    ),
                    (
                        0.050844906370207,
                        (0.063089014491502, 0.063089014491502, 0.873821971016996),
                    ),
                    (
                        0.082851075618374,
                        (0.053145049844817, 0.310352451033784, 0.636502499121399),
                    ),
                ],
            )
    raise ValueError(f"Unsupported triangle quadrature order: {order}")


@cache
def tetrahedron_rule(order: int) -> SimplexRule:
    """Gauss rule on a tetrahedron."""
    match order:
        case 1:
            return _rule(1, [(1.0, (0.25, 0.25, 0.25, 0.25))])
        case 2:
            a = 0.5854101966249685
            b = 0.1381966011250105
            return _rule(2, [(0.25, (a, b, b, b))])
    raise ValueError(f"Unsupported tetrahedron quadrature order: {order}")


@cache
def _legendre(points: int) -> tuple[FloatArray, FloatArray]:
    roots = scipy.special.roots_legendre  # pyright: ignore[reportUnknownMemberType]
    nodes, weights = roots(points)  # pyright: ignore[reportUnknownVariableType]
    return (
        0.5 * (np.asarray(nodes, dtype=float) + 1.0),
        0.5 * np.asarray(weights, dtype=float),
    )


def segment_rule(
    start: ArrayLike, end: ArrayLike, points: int = 3
) -> tuple[FloatArray, FloatArray]:
    """Gauss-Legendre points and weights on a straight segment."""
    a = np.asarray(start, dtype=float)
    b = np.asarray(end, dtype=float)
    nodes, weights = _legendre(points)
    length = float(np.linalg.norm(b - a))
    return a + nodes[:, np.newaxis] * (b - a), weights * length


def _triangle_measures(triangles: FloatArray) -> FloatArray:
    """Areas of triangles embedded in any dimension, shape (m,)."""
    first = triangles[:, 1] - triangles[:, 0]
    second = triangles[:, 2] - triangles[:, 0]
    gram = (
        np.sum(first * first, axis=1) * np.sum(second * second, axis=1)
        - np.sum(first * second, axis=1) ** 2
    )
    return 0.5 * np.sqrt(np.maximum(gram, 0.0))


def subdivided_triangle_rule(
    triangle: ArrayLike, depth: int, order: int = 2
) -> tuple[FloatArray, FloatArray]:
    """Gauss rule on the 4**depth congruent sub-triangles of a triangle.

    The triangle may live in 3D, as the face of a tetrahedron.
    """
    pieces = np.asarray(triangle, dtype=float)[np.newaxis]
    for _ in range(depth):
        a, b, c = pieces[:, 0], pieces[:, 1], pieces[:, 2]
        ab, bc, ca = 0.5 * (a + b), 0.5 * (b + c), 0.5 * (c + a)
        pieces = np.concatenate(
            [
                np.stack(corners, axis=1)
                for corners in ((a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca))
            ]
        )
    points, weights = triangle_rule(order).map_many(pieces, _triangle_measures(pieces))
    return points.reshape(-1, pieces.shape[2]), weights.ravel()

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike

from ppife.helpers import FloatArray, as_points
from ppife.quadrature import triangle_rule
from ppife.sides import Side


@dataclass(frozen=True)
class CutSegment:
    """The discrete interface inside one element: the segment DE."""

    #: First intersection point
    d: FloatArray
    #: Second intersection point
    e: FloatArray
    #: Unit normal of DE, pointing to the plus side
    normal: FloatArray
    #: Unit tangent, the normal rotated clockwise by 90 degrees
    tangent: FloatArray

    @property
    def midpoint(self) -> FloatArray:
        return 0.5 * (self.d + self.e)

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.e - self.d))

    def signed_distance(self, points: ArrayLike) -> FloatArray:
        """Signed distance to the line DE, positive on the plus side."""
        return (as_points(points) - self.d) @ self.normal

    def is_plus(self, points: ArrayLike) -> np.ndarray:
        """Side of points with respect to the cut line, points on the line count as plus."""
        return self.signed_distance(points) >= 0.0

    def side_of(self, point: ArrayLike) -> Side:
        return Side.PLUS if bool(self.is_plus(point)[0]) else Side.MINUS


@dataclass(frozen=True)
class SubTriangle:
    #: Vertices, counterclockwise, shape (3, 2)
    vertices: FloatArray
    #: Side of the cut line the sub-triangle lies on
    side: Side
    #: Area
    area: float


@dataclass(frozen=True)
class CutPolygonQuadrature:
    """Quadrature over the two regions of a cut triangle."""

    #: Sub-triangulation of both regions
    sub_triangles: tuple[SubTriangle, ...]
    #: Quadrature points, shape (k, 2)
    points: FloatArray
    #: Quadrature weights, shape (k,)
    weights: FloatArray
    #: Whether each quadrature point is on the plus side, shape (k,)
    plus_mask: np.ndarray

    @cached_property
    def area_plus(self) -> float:
        return sum(t.area for t in self.sub_triangles if t.side is Side.PLUS)

    @cached_property
    def area_minus(self) -> float:
        return sum(t.area for t in self.sub_triangles if t.side is Side.MINUS)

    def area(self, side: Side) -> float:
        return self.area_plus if side is Side.PLUS else self.area_minus

    def integrate(self, values: FloatArray) -> float:
        """Integral of values sampled at the quadrature points."""
        return float(self.weights @ values)

    @classmethod
    def from_sub_triangles(
        cls, sub_triangles: tuple[SubTriangle, ...], order: int
    ) -> "CutPolygonQuadrature":
        rule = triangle_rule(order)
        mapped = [rule.map(piece.vertices, piece.area) for piece in sub_triangles]
        return cls(
            sub_triangles=sub_triangles,
            points=np.concatenate([points for points, _ in mapped]),
            weights=np.concatenate([weights for _, weights in mapped]),
            plus_mask=np.concatenate(
                [
                    np.full(len(weights), piece.side is Side.PLUS)
                    for piece, (_, weights) in zip(sub_triangles, mapped)
                ]
            ),
        )

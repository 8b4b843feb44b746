"""Local IFE functions on tetrahedra cut by a tangent plane."""

from dataclasses import dataclass
from enum import Enum
from typing import override

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ppife.helpers import FloatArray, as_points
from ppife.sides import Side, SideValues


class CutType(Enum):
    """How a plane cuts a tetrahedron."""

    THREE_EDGE = "three-edge"
    FOUR_EDGE = "four-edge"
    NONE = "none"

    @override
    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TangentPlaneCut:
    """The plane tangent to the interface at a point of a tetrahedron."""

    #: Point x* of the interface the plane is tangent at
    anchor: FloatArray
    #: Unit normal, pointing to the plus side
    normal: FloatArray
    #: Orthonormal tangents spanning the plane, shape (2, 3)
    tangents: FloatArray
    #: Side of each vertex with respect to the interface
    vertex_sides: tuple[Side, Side, Side, Side]
    #: Volumes of the two sides of the plane within the tetrahedron
    volumes: SideValues

    @property
    def frame(self) -> FloatArray:
        """Rows n, t1, t2."""
        return np.vstack([self.normal, self.tangents])

    def signed_distance(self, points: ArrayLike) -> FloatArray:
        return (as_points(points) - self.anchor) @ self.normal

    def is_plus(self, points: ArrayLike) -> NDArray[np.bool_]:
        """Side of points with respect to the plane."""
        return self.signed_distance(points) >= 0.0


@dataclass(frozen=True)
class PiecewiseAffine3:
    """A pair of affine functions of three variables."""

    #: Coefficients (a, b, c, d) of the plus piece a + (b, c, d) . x
    plus: FloatArray
    #: Coefficients of the minus piece
    minus: FloatArray
    #: Plane the jump conditions are posed on
    cut: TangentPlaneCut

    def piece(self, side: Side) -> FloatArray:
        match side:
            case Side.PLUS:
                return self.plus
            case Side.MINUS:
                return self.minus
            case Side.INTERFACE:
                raise ValueError("A piece is either on the plus or the minus side")

    def value(self, points: ArrayLike, side: Side) -> FloatArray:
        coefficients = self.piece(side)
        return coefficients[0] + as_points(points) @ coefficients[1:]

    def values(self, points: ArrayLike, plus_mask: ArrayLike) -> FloatArray:
        """Values at points, each on the side given by the mask."""
        mask = np.asarray(plus_mask, dtype=bool)
        return np.where(mask, self.value(points, Side.PLUS), self.value(points, Side.MINUS))

    def gradient(self, side: Side) -> FloatArray:
        return self.piece(side)[1:]

    def gradients(self, plus_mask: ArrayLike) -> FloatArray:
        mask = np.asarray(plus_mask, dtype=bool)
        return np.where(mask[:, np.newaxis], self.plus[1:], self.minus[1:])

    def jump(self, points: ArrayLike) -> FloatArray:
        """Plus minus minus piece."""
        difference = self.plus - self.minus
        return difference[0] + as_points(points) @ difference[1:]

    def gradient_jump(self) -> FloatArray:
        return self.plus[1:] - self.minus[1:]

    def flux_jump(self, beta: SideValues) -> float:
        normal = self.cut.normal
        return float(beta.plus * self.plus[1:] @ normal - beta.minus * self.minus[1:] @ normal)

    def __add__(self, other: "PiecewiseAffine3") -> "PiecewiseAffine3":
        return PiecewiseAffine3(self.plus + other.plus, self.minus + other.minus, self.cut)

    def __sub__(self, other: "PiecewiseAffine3") -> "PiecewiseAffine3":
        return PiecewiseAffine3(self.plus - other.plus, self.minus - other.minus, self.cut)

    def __mul__(self, factor: float) -> "PiecewiseAffine3":
        return PiecewiseAffine3(factor * self.plus, factor * self.minus, self.cut)

    def __rmul__(self, factor: float) -> "PiecewiseAffine3":
        return self * factor


@dataclass(frozen=True)
class IfeBasis3:
    """The four IFE shape functions of a cut tetrahedron."""

    #: Vertices, shape (4, 3)
    vertices: FloatArray
    #: Tangent plane
    cut: TangentPlaneCut
    #: Coefficients of the flux condition
    beta: SideValues
    #: Shape functions, one per vertex
    functions: tuple[PiecewiseAffine3, PiecewiseAffine3, PiecewiseAffine3, PiecewiseAffine3]
    #: Affine coefficients of the nodal hat functions, shape (4, 4)
    hats: FloatArray
    #: Nodal values of the interpolant of the one-sided distance to the plane
    distance_nodal_values: FloatArray
    #: 1 + (beta_minus / beta_plus - 1) * grad(I w) . n
    denominator: float

    @property
    def normal_slope(self) -> float:
        """grad(I w) . n, between 0 and 1 under the angle conditions."""
        return float((self.distance_nodal_values @ self.hats[:, 1:]) @ self.cut.normal)

    def combine(self, nodal_values: ArrayLike) -> PiecewiseAffine3:
        values = np.asarray(nodal_values, dtype=float)
        return PiecewiseAffine3(
            values @ np.stack([f.plus for f in self.functions]),
            values @ np.stack([f.minus for f in self.functions]),
            self.cut,
        )


@dataclass(frozen=True)
class Auxiliary3:
    """Functions with unit jump signatures on a cut tetrahedron."""

    #: Unit value jump at the anchor
    psi: PiecewiseAffine3
    #: Unit flux jump
    upsilon: PiecewiseAffine3
    #: Unit jump of the derivative along the first tangent
    theta_1: PiecewiseAffine3
    #: Unit jump of the derivative along the second tangent
    theta_2: PiecewiseAffine3


@dataclass(frozen=True)
class SideQuadrature:
    """Quadrature on a tetrahedron split by a curved interface."""

    #: Points, shape (k, 3)
    points: FloatArray
    #: Weights, shape (k,)
    weights: FloatArray
    #: Whether each point is on the plus side of the interface
    plus_mask: NDArray[np.bool_]
    #: Whether each point is on the plus side of the tangent plane, if one was given
    plane_plus_mask: NDArray[np.bool_]

    @property
    def volumes(self) -> SideValues:
        return SideValues(
            float(np.sum(self.weights[self.plus_mask])),
            float(np.sum(self.weights[~self.plus_mask])),
        )

    def integrate(self, values: FloatArray) -> float:
        return float(self.weights @ values)

"""Piecewise affine functions on cut triangles."""

from dataclasses import dataclass
from typing import override

import numpy as np
from numpy.typing import ArrayLike

from ppife.helpers import FloatArray, as_points
from ppife.models.cut import CutSegment
from ppife.sides import Side, SideValues


def affine_values(coefficients: FloatArray, points: ArrayLike) -> FloatArray:
    """Values of a + b x + c y (coefficients (..., 3)) at points (n, 2)."""
    points_array = as_points(points)
    return coefficients[..., 0, np.newaxis] + coefficients[..., 1:] @ points_array.T


@dataclass(frozen=True)
class PiecewiseAffine:
    """A function made of one affine piece per side of a cut line."""

    #: Coefficients (a, b, c) of the plus piece a + b x + c y
    plus: FloatArray
    #: Coefficients (a, b, c) of the minus piece
    minus: FloatArray
    #: Cut line separating the pieces
    segment: CutSegment

    def piece(self, side: Side) -> FloatArray:
        match side:
            case Side.PLUS:
                return self.plus
            case Side.MINUS:
                return self.minus
            case Side.INTERFACE:
                raise ValueError("A piece is either on the plus or the minus side")

    def value(self, points: ArrayLike, side: Side) -> FloatArray:
        return affine_values(self.piece(side), points)

    def gradient(self, side: Side) -> FloatArray:
        return self.piece(side)[1:]

    def values(self, points: ArrayLike, plus_mask: ArrayLike) -> FloatArray:
        """Values at points, each on the side given by the mask."""
        mask = np.asarray(plus_mask, dtype=bool)
        return np.where(mask, self.value(points, Side.PLUS), self.value(points, Side.MINUS))

    def __call__(self, point: ArrayLike) -> float:
        """Value at a point, on the side given by the cut line."""
        return float(self.value(point, self.segment.side_of(point))[0])

    def jump(self, points: ArrayLike) -> FloatArray:
        """Plus minus minus piece, at points."""
        return affine_values(self.plus - self.minus, points)

    def flux_jump(self, beta: SideValues) -> float:
        """Jump of the normal flux across the cut line."""
        normal = self.segment.normal
        return float(
            beta.plus * self.plus[1:] @ normal - beta.minus * self.minus[1:] @ normal
        )

    def __add__(self, other: "PiecewiseAffine") -> "PiecewiseAffine":
        return PiecewiseAffine(self.plus + other.plus, self.minus + other.minus, self.segment)

    def __sub__(self, other: "PiecewiseAffine") -> "PiecewiseAffine":
        return PiecewiseAffine(self.plus - other.plus, self.minus - other.minus, self.segment)

    def __mul__(self, factor: float) -> "PiecewiseAffine":
        return PiecewiseAffine(factor * self.plus, factor * self.minus, self.segment)

    def __rmul__(self, factor: float) -> "PiecewiseAffine":
        return self * factor

    @override
    def __repr__(self) -> str:
        return f"PiecewiseAffine(plus={self.plus}, minus={self.minus})"


@dataclass(frozen=True)
class IfeBasis:
    """The three IFE shape functions of an interface element."""

    #: Triangle vertices, shape (3, 2)
    vertices: FloatArray
    #: Discrete interface
    segment: CutSegment
    #: Coefficients used in the flux condition
    beta: SideValues
    #: Shape functions, one per vertex
    functions: tuple[PiecewiseAffine, PiecewiseAffine, PiecewiseAffine]
    #: Side of each vertex with respect to the cut line
    vertex_sides: tuple[Side, Side, Side]
    #: Affine coefficients of the nodal hat functions, shape (3, 3)
    hats: FloatArray
    #: Nodal values of the interpolant of the one-sided distance function
    distance_nodal_values: FloatArray
    #: 1 + (beta_minus / beta_plus - 1) * grad(I w) . n
    denominator: float

    @property
    def plus_coefficients(self) -> FloatArray:
        """Plus pieces, shape (3, 3): one row (a, b, c) per shape function."""
        return np.stack([f.plus for f in self.functions])

    @property
    def minus_coefficients(self) -> FloatArray:
        return np.stack([f.minus for f in self.functions])

    @property
    def normal_slope(self) -> float:
        """grad(I w) . n, between 0 and 1 on non-obtuse triangles."""
        return float(
            (self.distance_nodal_values @ self.hats[:, 1:]) @ self.segment.normal
        )

    def values(self, points: ArrayLike, plus_mask: ArrayLike) -> FloatArray:
        """Shape function values at points, shape (n, 3)."""
        mask = np.asarray(plus_mask, dtype=bool)
        plus = affine_values(self.plus_coefficients, points).T
        minus = affine_values(self.minus_coefficients, points).T
        return np.where(mask[:, np.newaxis], plus, minus)

    def gradients(self, plus_mask: ArrayLike) -> FloatArray:
        """Shape function gradients, shape (n, 3, 2)."""
        mask = np.asarray(plus_mask, dtype=bool)
        return np.where(
            mask[:, np.newaxis, np.newaxis],
            self.plus_coefficients[np.newaxis, :, 1:],
            self.minus_coefficients[np.newaxis, :, 1:],
        )

    def combine(self, nodal_values: ArrayLike) -> PiecewiseAffine:
        """The IFE function with the given nodal values."""
        values = np.asarray(nodal_values, dtype=float)
        return PiecewiseAffine(
            values @ self.plus_coefficients,
            values @ self.minus_coefficients,
            self.segment,
        )


@dataclass(frozen=True)
class AuxiliaryTriple:
    """Functions with unit jumps used to split the interpolation error."""

    #: Unit flux jump, no value jumps
    upsilon: PiecewiseAffine
    #: Unit value jump at D
    psi_d: PiecewiseAffine
    #: Unit value jump at E
    psi_e: PiecewiseAffine

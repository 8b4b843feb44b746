from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ppife.helpers import FloatArray, IntArray
from ppife.sides import Side


@dataclass(frozen=True)
class EdgeRule:
    """Quadrature on an interface edge, split at its interface point."""

    #: Points, shape (k, 2)
    points: FloatArray
    #: Weights, shape (k,)
    weights: FloatArray
    #: Whether each point is on the plus side, shape (k,)
    plus_mask: NDArray[np.bool_]


@dataclass(frozen=True)
class LiftingField:
    """The local lifting of an edge jump, piecewise constant on the two elements.

    On the element i, the field equals c_i t_i + weight * d_i n_i, where the
    weight is the coefficient of the opposite side.
    """

    #: Index of the edge
    edge: int
    #: Supporting elements, lower index first
    elements: tuple[int, int]
    #: Tangential coefficients, shape (2,)
    c: FloatArray
    #: Normal coefficients, shape (2,)
    d: FloatArray
    #: Cut line normals of the elements, shape (2, 2)
    normals: FloatArray
    #: Cut line tangents of the elements, shape (2, 2)
    tangents: FloatArray
    #: Sub-areas of the elements, shape (2, 2), columns (plus, minus)
    areas: FloatArray
    #: Weights of the normal component, shape (2, 2), columns (plus, minus)
    weights: FloatArray
    #: Integrals of the coefficient over the elements, shape (2,)
    tangential_mass: FloatArray
    #: Weighted integrals of the coefficient over the elements, shape (2,)
    normal_mass: FloatArray

    def value(self, slot: int, side: Side) -> FloatArray:
        """Field on one side of one of the two supporting elements."""
        column = 0 if side is Side.PLUS else 1
        return (
            self.c[slot] * self.tangents[slot]
            + self.weights[slot, column] * self.d[slot] * self.normals[slot]
        )

    def inner(self, other: "LiftingField") -> float:
        """Coefficient weighted L2 product with another lifting of the same edge."""
        assert self.edge == other.edge, "Liftings of different edges"
        return float(
            np.sum(self.c * other.c * self.tangential_mass)
            + np.sum(self.d * other.d * self.normal_mass)
        )

    @property
    def coefficients(self) -> FloatArray:
        """(c1, d1, c2, d2)."""
        return np.array([self.c[0], self.d[0], self.c[1], self.d[1]])


@dataclass(frozen=True)
class EdgeLiftings:
    """Liftings of the jumps of the shape functions attached to one edge."""

    #: The interface edge
    edge: int
    #: Global vertex indices of the shape functions, shape (m,)
    dofs: IntArray
    #: One lifting per shape function
    fields: tuple[LiftingField, ...]

    def gram(self) -> FloatArray:
        """Matrix of the weighted L2 products of the liftings."""
        c = np.stack([field.c for field in self.fields])
        d = np.stack([field.d for field in self.fields])
        first = self.fields[0]
        return (c * first.tangential_mass) @ c.T + (d * first.normal_mass) @ d.T


@dataclass(frozen=True)
class EdgeTraces:
    """Traces of the shape functions attached to an interface edge."""

    #: Quadrature on the edge
    rule: EdgeRule
    #: Global vertex indices, shape (m,)
    dofs: IntArray
    #: Jumps [phi]_e at the rule points, shape (m, k)
    jumps: FloatArray
    #: Averages {beta_h grad(phi)} at the rule points, shape (m, k, 2)
    gradient_averages: FloatArray
    #: Unit normal of the edge, from its first to its second element
    normal: FloatArray

    @property
    def flux_averages(self) -> FloatArray:
        """Averages {beta_h grad(phi) . n_e}, shape (m, k)."""
        return self.gradient_averages @ self.normal

"""Benchmark interface problems with known solutions.

Each profile is a factory taking the pair of coefficients, ignored by the
problems whose coefficient is a fixed field.
"""

from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from ppife.helpers import FloatArray
from ppife.models.coefficient import BetaBarStrategy, ConstantCoefficient, FieldCoefficient
from ppife.models.level_set import FlowerLevelSet
from ppife.models.problem import ExactSolution, Problem
from ppife.profiles.level_sets import LEVEL_SET_PROFILES
from ppife.sides import SideValues


ProblemFactory = Callable[[SideValues], Problem]

#: Radius of the circular interface of the first example
RADIUS = 0.5


def example1(beta: SideValues) -> Problem:
    """u = r^3 / beta inside the circle, shifted outside to be continuous, f = -9 r."""
    plus, minus = beta.plus, beta.minus
    shift = (1.0 / minus - 1.0 / plus) * RADIUS**3

    def value(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        cubes = np.linalg.norm(points, axis=1) ** 3
        return np.where(plus_mask, cubes / plus + shift, cubes / minus)

    def gradient(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        scaled = 3.0 * np.linalg.norm(points, axis=1)[:, np.newaxis] * points
        return np.where(plus_mask[:, np.newaxis], scaled / plus, scaled / minus)

    def source(points: FloatArray, _: NDArray[np.bool_]) -> FloatArray:
        return -9.0 * np.linalg.norm(points, axis=1)

    return Problem(
        name="example1",
        geometry=LEVEL_SET_PROFILES["circle"],
        coefficient=ConstantCoefficient(beta),
        source=source,
        exact=ExactSolution(value=value, gradient=gradient),
    )


#: Profiles b(s) of the coefficients of the second example with s = 6 x + 6 y,
#: as (b, b', b'') on the plus and on the minus side
_PLUS_PROFILE = (
    lambda s: 300.0 * (2.0 + np.sin(s)),
    lambda s: 300.0 * np.cos(s),
    lambda s: -300.0 * np.sin(s),
)
_MINUS_PROFILE = (
    lambda s: 2.0 + np.cos(s),
    lambda s: -np.sin(s),
    lambda s: -np.cos(s),
)


def _phase(points: FloatArray) -> FloatArray:
    return 6.0 * (points[:, 0] + points[:, 1])


def example2(_: SideValues | None = None) -> Problem:
    """u = phi / beta with the flower interface and smooth coefficients on both sides."""
    geometry = LEVEL_SET_PROFILES["flower"]
    assert isinstance(geometry, FlowerLevelSet)

    def coefficient_parts(
        points: FloatArray, plus_mask: NDArray[np.bool_]
    ) -> tuple[FloatArray, FloatArray, FloatArray]:
        """beta, its gradient and its laplacian, each point on its side."""
        s = _phase(points)
        b, db, ddb = (
            np.where(plus_mask, plus_part(s), minus_part(s))
            for plus_part, minus_part in zip(_PLUS_PROFILE, _MINUS_PROFILE)
        )
        return b, 6.0 * db[:, np.newaxis] * np.ones((1, 2)), 72.0 * ddb

    def value(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        beta, _, _ = coefficient_parts(points, plus_mask)
        return geometry.value(points) / beta

    def gradient(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        beta, beta_gradient, _ = coefficient_parts(points, plus_mask)
        phi = geometry.value(points)
        return (
            geometry.gradient(points) / beta[:, np.newaxis]
            - (phi / beta**2)[:, np.newaxis] * beta_gradient
        )

    def source(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        # -div(beta grad(phi / beta)) = -lap(phi) + div(phi grad(beta) / beta)
        beta, beta_gradient, beta_laplacian = coefficient_parts(points, plus_mask)
        phi = geometry.value(points)
        slope = np.sum(geometry.gradient(points) * beta_gradient, axis=1)
        return (
            -geometry.laplacian(points)
            + slope / beta
            + phi * (beta_laplacian / beta - np.sum(beta_gradient**2, axis=1) / beta**2)
        )

    plus_beta, _, _ = _PLUS_PROFILE
    minus_beta, _, _ = _MINUS_PROFILE
    return Problem(
        name="example2",
        geometry=geometry,
        coefficient=FieldCoefficient(
            plus=lambda points: plus_beta(_phase(points)),
            minus=lambda points: minus_beta(_phase(points)),
            strategy=BetaBarStrategy.MIDPOINT,
        ),
        source=source,
        exact=ExactSolution(value=value, gradient=gradient),
    )


def linear(beta: SideValues) -> Problem:
    """u = phi / beta across the vertical interface, f = 0.

    The solution lies in the IFE space of any mesh, so the scheme reproduces it.
    The flux beta grad u is tangent to the top and bottom sides of the box, the only
    sides the interface crosses.
    """
    geometry = LEVEL_SET_PROFILES["line"]

    def value(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        return geometry.value(points) / np.where(plus_mask, beta.plus, beta.minus)

    def gradient(points: FloatArray, plus_mask: NDArray[np.bool_]) -> FloatArray:
        scale = np.where(plus_mask, beta.plus, beta.minus)[:, np.newaxis]
        return geometry.gradient(points) / scale

    def source(points: FloatArray, _: NDArray[np.bool_]) -> FloatArray:
        return np.zeros(len(points))

    return Problem(
        name="linear",
        geometry=geometry,
        coefficient=ConstantCoefficient(beta),
        source=source,
        exact=ExactSolution(value=value, gradient=gradient),
    )


PROBLEM_PROFILES: dict[str, ProblemFactory] = {
    "example1": example1,
    "example2": example2,
    "linear": linear,
}

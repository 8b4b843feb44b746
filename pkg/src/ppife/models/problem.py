from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ppife.helpers import FloatArray, as_points
from ppife.models.coefficient import Coefficient
from ppife.models.level_set import LevelSetGeometry

#: A two sided function: (points, plus_mask) -> values
TwoSidedFunction = Callable[[FloatArray, np.ndarray], FloatArray]


@dataclass(frozen=True)
class ExactSolution:
    """A solution given by one formula per side of the true interface."""

    #: Values, shape (n,)
    value: TwoSidedFunction
    #: Gradients, shape (n, 2)
    gradient: TwoSidedFunction


@dataclass(frozen=True)
class Problem:
    """An interface problem: -div(beta grad u) = f, u = g on the boundary."""

    #: Name of the problem
    name: str
    #: Interface
    geometry: LevelSetGeometry
    #: Diffusion coefficient
    coefficient: Coefficient
    #: Source term, two sided
    source: TwoSidedFunction
    #: Exact solution, if known
    exact: ExactSolution | None = None
    #: Dirichlet data, the exact solution's trace by default
    dirichlet: Callable[[FloatArray], FloatArray] | None = None

    def true_plus_mask(self, points: ArrayLike) -> np.ndarray:
        return self.geometry.value(points) >= 0.0

    def f(self, points: ArrayLike) -> FloatArray:
        """Source term, each point on its true side."""
        points_array = as_points(points)
        return self.source(points_array, self.true_plus_mask(points_array))

    def g(self, points: ArrayLike) -> FloatArray:
        points_array = as_points(points)
        if self.dirichlet is not None:
            return self.dirichlet(points_array)
        return self.u(points_array)

    def u(self, points: ArrayLike) -> FloatArray:
        """Exact solution, each point on its true side."""
        if self.exact is None:
            raise ValueError(f"Problem {self.name} has no exact solution")
        points_array = as_points(points)
        return self.exact.value(points_array, self.true_plus_mask(points_array))

"""Diffusion coefficients, piecewise constant or piecewise smooth."""

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
from typing import override

import numpy as np
from numpy.typing import ArrayLike

from ppife.helpers import FloatArray, as_points
from ppife.models.cut import CutSegment
from ppife.sides import Side, SideValues


class BetaBarStrategy(Enum):
    """Where the element averages of a variable coefficient are sampled."""

    MIDPOINT = "midpoint"
    MEAN = "mean"

    @override
    def __str__(self) -> str:
        return self.value


class Coefficient(ABC):
    @property
    @abstractmethod
    def is_constant(self) -> bool: ...

    @abstractmethod
    def values(self, points: ArrayLike, side: Side) -> FloatArray:
        """Coefficient of one side at points."""

    @abstractmethod
    def beta_bars(self, segment: CutSegment) -> SideValues:
        """Per element constants entering the flux condition of the IFE basis."""

    def side_values(self, points: ArrayLike, plus_mask: ArrayLike) -> FloatArray:
        """Coefficient at points, each on its own side."""
        mask = np.asarray(plus_mask, dtype=bool)
        return np.where(
            mask, self.values(points, Side.PLUS), self.values(points, Side.MINUS)
        )

    @property
    def is_uniform(self) -> bool:
        """Whether both sides share the same coefficient."""
        return False


@dataclass(frozen=True)
class ConstantCoefficient(Coefficient):
    beta: SideValues

    @property
    @override
    def is_constant(self) -> bool:
        return True

    @property
    @override
    def is_uniform(self) -> bool:
        return self.beta.is_uniform

    @override
    def values(self, points: ArrayLike, side: Side) -> FloatArray:
        return np.full(len(as_points(points)), self.beta[side])

    @override
    def beta_bars(self, segment: CutSegment) -> SideValues:
        return self.beta


@dataclass(frozen=True)
class FieldCoefficient(Coefficient):
    #: Coefficient on the plus side, vectorised over points (n, 2)
    plus: Callable[[FloatArray], FloatArray]
    #: Coefficient on the minus side
    minus: Callable[[FloatArray], FloatArray]
    #: Sampling of the element averages
    strategy: BetaBarStrategy = BetaBarStrategy.MIDPOINT

    @property
    @override
    def is_constant(self) -> bool:
        return False

    @override
    def values(self, points: ArrayLike, side: Side) -> FloatArray:
        points_array = as_points(points)
        match side:
            case Side.PLUS:
                return np.asarray(self.plus(points_array), dtype=float)
            case Side.MINUS:
                return np.asarray(self.minus(points_array), dtype=float)
            case Side.INTERFACE:
                raise ValueError("The coefficient is two valued on the interface")

    @override
    def beta_bars(self, segment: CutSegment) -> SideValues:
        match self.strategy:
            case BetaBarStrategy.MIDPOINT:
                samples = segment.midpoint[np.newaxis, :]
            case BetaBarStrategy.MEAN:
                samples = np.stack([segment.d, segment.e])
        return SideValues(
            plus=float(np.mean(self.values(samples, Side.PLUS))),
            minus=float(np.mean(self.values(samples, Side.MINUS))),
        )

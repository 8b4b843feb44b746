"""Interfaces described as zero sets of level set functions."""

from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import override

import numpy as np
from numpy.typing import ArrayLike

from ppife.dimensions import UNIT_BOX, Rectangle
from ppife.helpers import FloatArray, as_points


class LevelSetGeometry(ABC):
    """A signed function, positive on the outer region and negative inside."""

    #: Bounding domain
    domain: Rectangle = UNIT_BOX

    @property
    def tube_width(self) -> float:
        """Width of the tube around the interface where the gradient is nonzero."""
        return float("inf")

    @abstractmethod
    def value(self, points: ArrayLike) -> FloatArray:
        """Level set values at points of shape (n, d)."""

    @abstractmethod
    def gradient(self, points: ArrayLike) -> FloatArray:
        """Level set gradients at points, shape (n, d)."""

    def __call__(self, point: ArrayLike) -> float:
        return float(self.value(as_points(point))[0])

    def curvature(self, points: ArrayLike, step: float = 1e-6) -> FloatArray:
        """Curvature of the level lines, by central differences of the gradient."""
        points_array = as_points(points)
        gradient = self.gradient(points_array)
        norm = np.linalg.norm(gradient, axis=1)
        tangent = np.stack([gradient[:, 1], -gradient[:, 0]], axis=1) / norm[:, None]
        forward = self.gradient(points_array + step * tangent)
        backward = self.gradient(points_array - step * tangent)
        hessian_tangent = (forward - backward) / (2 * step)
        return np.abs(np.einsum("nd,nd->n", tangent, hessian_tangent)) / norm


@dataclass(frozen=True)
class CircleLevelSet(LevelSetGeometry):
    """phi(x) = |x - center| - radius."""

    radius: float = 0.5
    center: tuple[float, float] = (0.0, 0.0)
    domain: Rectangle = UNIT_BOX

    @property
    @override
    def tube_width(self) -> float:
        return self.radius

    @override
    def value(self, points: ArrayLike) -> FloatArray:
        offsets = as_points(points) - np.asarray(self.center)
        return np.linalg.norm(offsets, axis=1) - self.radius

    @override
    def gradient(self, points: ArrayLike) -> FloatArray:
        offsets = as_points(points) - np.asarray(self.center)
        norm = np.linalg.norm(offsets, axis=1)
        # The gradient is undefined at the center, any unit vector will do
        norm = np.where(norm == 0.0, 1.0, norm)
        return offsets / norm[:, None]


@dataclass(frozen=True)
class FlowerLevelSet(LevelSetGeometry):
    """phi(x) = (3(x^2 + y^2) - x)^2 - x^2 - y^2 + offset, a non-convex curve."""

    offset: float = 0.02
    domain: Rectangle = UNIT_BOX

    @override
    def value(self, points: ArrayLike) -> FloatArray:
        x, y = as_points(points).T
        squared = x**2 + y**2
        return (3 * squared - x) ** 2 - squared + self.offset

    @override
    def gradient(self, points: ArrayLike) -> FloatArray:
        x, y = as_points(points).T
        inner = 3 * (x**2 + y**2) - x
        return np.stack(
            [2 * inner * (6 * x - 1) - 2 * x, 2 * inner * 6 * y - 2 * y], axis=1
        )

    def laplacian(self, points: ArrayLike) -> FloatArray:
        x, y = as_points(points).T
        inner = 3 * (x**2 + y**2) - x
        return 2 * (6 * x - 1) ** 2 + 72 * y**2 + 24 * inner - 4


@dataclass(frozen=True)
class LineLevelSet(LevelSetGeometry):
    """phi(x) = normal . (x - point), a straight interface."""

    point: tuple[float, ...] = (0.0, 0.0)
    normal: tuple[float, ...] = (1.0, 0.0)
    domain: Rectangle = UNIT_BOX

    @override
    def value(self, points: ArrayLike) -> FloatArray:
        return (as_points(points) - np.asarray(self.point)) @ np.asarray(self.normal)

    @override
    def gradient(self, points: ArrayLike) -> FloatArray:
        points_array = as_points(points)
        return np.broadcast_to(
            np.asarray(self.normal, dtype=float), points_array.shape
        ).copy()


@dataclass(frozen=True)
class SphereLevelSet(LevelSetGeometry):
    """phi(x) = |x - center| - radius, in 3D."""

    radius: float = 0.5
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @override
    def value(self, points: ArrayLike) -> FloatArray:
        offsets = as_points(points) - np.asarray(self.center)
        return np.linalg.norm(offsets, axis=1) - self.radius

    @override
    def gradient(self, points: ArrayLike) -> FloatArray:
        offsets = as_points(points) - np.asarray(self.center)
        norm = np.linalg.norm(offsets, axis=1)
        norm = np.where(norm == 0.0, 1.0, norm)
        return offsets / norm[:, None]


@dataclass(frozen=True)
class FunctionLevelSet(LevelSetGeometry):
    """A level set given by user supplied vectorised callables."""

    value_function: Callable[[FloatArray], FloatArray] = field(
        default=lambda points: np.zeros(len(points))
    )
    gradient_function: Callable[[FloatArray], FloatArray] = field(
        default=lambda points: np.zeros_like(points)
    )
    domain: Rectangle = UNIT_BOX

    @override
    def value(self, points: ArrayLike) -> FloatArray:
        return np.asarray(self.value_function(as_points(points)), dtype=float)

    @override
    def gradient(self, points: ArrayLike) -> FloatArray:
        return np.asarray(self.gradient_function(as_points(points)), dtype=float)

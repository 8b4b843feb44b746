from dataclasses import dataclass
from typing import Self, override

import numpy as np
from numpy.typing import ArrayLike


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle, the computational domain."""

    #: Lower bound on the X axis
    x_min: float
    #: Upper bound on the X axis
    x_max: float
    #: Lower bound on the Y axis
    y_min: float
    #: Upper bound on the Y axis
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"Empty rectangle: {self}")

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parses a rectangle from a string.

        The string should be in the format of `XMIN:XMAXxYMIN:YMAX`,
        e.g. `-1:1x-1:1`.
        """
        x_range, y_range = text.split("x")
        x_min, x_max = x_range.split(":")
        y_min, y_max = y_range.split(":")
        return cls(float(x_min), float(x_max), float(y_min), float(y_max))

    @override
    def __str__(self) -> str:
        return f"{self.x_min:g}:{self.x_max:g}x{self.y_min:g}:{self.y_max:g}"

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def width(self) -> float:
        return self.y_max - self.y_min

    @property
    def corners(self) -> tuple[tuple[float, float], ...]:
        return (
            (self.x_min, self.y_min),
            (self.x_max, self.y_min),
            (self.x_max, self.y_max),
            (self.x_min, self.y_max),
        )

    def __contains__(self, point: ArrayLike) -> bool:
        x, y = np.asarray(point, dtype=float)
        tolerance = 1e-12 * max(self.length, self.width)
        return bool(
            self.x_min - tolerance <= x <= self.x_max + tolerance
            and self.y_min - tolerance <= y <= self.y_max + tolerance
        )


#: Default domain of the benchmark problems
UNIT_BOX = Rectangle(-1.0, 1.0, -1.0, 1.0)

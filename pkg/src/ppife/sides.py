from enum import Enum
from typing import Self, final, override


class Side(Enum):
    PLUS = "plus"
    MINUS = "minus"
    INTERFACE = "interface"

    @property
    def sign(self) -> int:
        """Sign of the level set on this side."""
        match self:
            case Side.PLUS:
                return 1
            case Side.MINUS:
                return -1
            case Side.INTERFACE:
                return 0

    @property
    def opposite(self) -> "Side":
        """Opposite side."""
        match self:
            case Side.PLUS:
                return Side.MINUS
            case Side.MINUS:
                return Side.PLUS
            case Side.INTERFACE:
                return Side.INTERFACE

    @classmethod
    def from_value(cls, value: float, tolerance: float = 0.0) -> Self:
        """Classify a level set value."""
        if value > tolerance:
            return cls.PLUS
        if value < -tolerance:
            return cls.MINUS
        return cls.INTERFACE

    @override
    def __str__(self) -> str:
        return self.value


@final
class SideValues(dict[Side, float]):
    """A pair of values, one per side of the interface (e.g. the coefficient)."""

    def __init__(self, plus: float, minus: float) -> None:
        super().__init__({Side.PLUS: plus, Side.MINUS: minus})

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parses a pair from a string.

        The string should be in the format of `PLUS,MINUS`.
        """
        plus, minus = text.split(",")
        return cls(float(plus), float(minus))

    @property
    def plus(self) -> float:
        return self[Side.PLUS]

    @property
    def minus(self) -> float:
        return self[Side.MINUS]

    @property
    def ratio(self) -> float:
        """Contrast minus/plus, as it appears in the basis formula."""
        return self.minus / self.plus

    @property
    def is_uniform(self) -> bool:
        return self.plus == self.minus

    @override
    def __str__(self) -> str:
        return f"{self.plus:g},{self.minus:g}"

    def __invert__(self) -> "SideValues":
        return SideValues(plus=self.minus, minus=self.plus)

"""Errors raised by the solver."""

from typing import override


class PpifeError(Exception):
    """Base class of all solver errors."""


class NoBracket(PpifeError, ValueError):
    """The level set has the same strict sign at both ends of a segment."""

    def __init__(self, value_a: float, value_b: float) -> None:
        super().__init__(
            f"No sign change on segment: phi(a)={value_a:.3e}, phi(b)={value_b:.3e}"
        )
        self.value_a: float = value_a
        self.value_b: float = value_b


class AssumptionAViolated(PpifeError):
    """The interface cuts an element in an unsupported way."""

    def __init__(
        self,
        reason: str,
        element: int | None = None,
        suggested_n: int | None = None,
    ) -> None:
        self.reason: str = reason
        self.element: int | None = element
        self.suggested_n: int | None = suggested_n
        super().__init__(str(self))

    @override
    def __str__(self) -> str:
        message = self.reason
        if self.element is not None:
            message = f"Element {self.element}: {message}"
        if self.suggested_n is not None:
            message += f" (refine the mesh, try N >= {self.suggested_n})"
        return message


class DegenerateCut(PpifeError):
    """One side of a cut has a negligible area or volume."""


class SingularBasis(PpifeError):
    """The IFE basis denominator vanishes."""

    def __init__(self, denominator: float) -> None:
        super().__init__(f"Singular IFE basis: denominator={denominator:.3e}")
        self.denominator: float = denominator


class NotInterfaceEdge(PpifeError):
    """The edge is not shared by two interface elements."""

    def __init__(self, edge: int) -> None:
        super().__init__(f"Edge {edge} is not an interior interface edge")
        self.edge: int = edge


class NotConverged(PpifeError):
    """The solver stopped before reaching the tolerance, or the system is not positive definite."""

    def __init__(self, iterations: int, residual: float) -> None:
        super().__init__(
            f"Solver did not converge after {iterations} iterations "
            + f"(relative residual {residual:.3e})"
        )
        self.iterations: int = iterations
        self.residual: float = residual


class OutOfDomain(PpifeError, ValueError):
    """A point lies outside of the computational domain."""

    def __init__(self, point: tuple[float, ...]) -> None:
        super().__init__(f"Point {point} is outside of the domain")
        self.point: tuple[float, ...] = point


class InsufficientData(PpifeError, ValueError):
    """Not enough refinement levels to fit convergence rates."""


class AngleConditionViolated(UserWarning):
    """A tetrahedron exceeds the right-angle conditions of the 3D basis."""

from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
from typing import Self

from ppife.solver import DEFAULT_TOLERANCE, DIRECT_THRESHOLD


@dataclass(frozen=True)
class SolverParameters:
    #: Relative residual of the conjugate gradient
    tolerance: float = DEFAULT_TOLERANCE
    #: Iteration cap, 10 times the number of unknowns if unset
    max_iter: int | None = None
    #: Systems with fewer unknowns are factorized
    direct_threshold: int = DIRECT_THRESHOLD

    def __post_init__(self) -> None:
        if not self.tolerance > 0.0:
            raise ValueError(f"The solver tolerance must be positive, got {self.tolerance}")

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Solver")
        _ = group.add_argument(
            "--tol",
            metavar="X",
            type=float,
            default=DEFAULT_TOLERANCE,
            help="Relative residual of the conjugate gradient (default: %(default)s)",
        )
        _ = group.add_argument(
            "--max-iter",
            metavar="N",
            type=int,
            help="Iteration cap of the conjugate gradient (default: 10 times the unknowns)",
        )
        _ = group.add_argument(
            "--direct-threshold",
            metavar="N",
            type=int,
            default=DIRECT_THRESHOLD,
            help="Factorize systems with fewer unknowns (default: %(default)s)",
        )

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            tolerance=namespace.tol,  # pyright: ignore[reportAny]
            max_iter=namespace.max_iter,  # pyright: ignore[reportAny]
            direct_threshold=namespace.direct_threshold,  # pyright: ignore[reportAny]
        )

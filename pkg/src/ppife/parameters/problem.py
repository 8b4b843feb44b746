from argparse import ArgumentParser, Namespace
from dataclasses import dataclass, field, replace
from typing import Self

from ppife.models.coefficient import BetaBarStrategy, FieldCoefficient
from ppife.models.problem import Problem
from ppife.profiles.problems import PROBLEM_PROFILES
from ppife.sides import SideValues


@dataclass(frozen=True)
class ProblemParameters:
    """Which benchmark problem to solve, and with which coefficients."""

    #: Name of the problem profile
    example: str = "example1"
    #: Piecewise constant coefficients, ignored by problems with a coefficient field
    beta: SideValues = field(default_factory=lambda: SideValues(plus=10.0, minus=1.0))
    #: Sampling of the element averages of a coefficient field
    beta_bar: BetaBarStrategy = BetaBarStrategy.MIDPOINT

    def __post_init__(self) -> None:
        if self.example not in PROBLEM_PROFILES:
            raise ValueError(
                f"Unknown example: {self.example} (available: {', '.join(PROBLEM_PROFILES)})"
            )
        if self.beta.plus <= 0.0 or self.beta.minus <= 0.0:
            raise ValueError(f"Coefficients must be positive, got {self.beta}")

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Problem")
        _ = group.add_argument(
            "--example",
            choices=sorted(PROBLEM_PROFILES),
            default="example1",
            help="Benchmark problem (default: %(default)s)",
        )
        _ = group.add_argument(
            "--beta-plus",
            metavar="X",
            type=float,
            default=10.0,
            help="Coefficient outside of the interface (default: %(default)s)",
        )
        _ = group.add_argument(
            "--beta-minus",
            metavar="X",
            type=float,
            default=1.0,
            help="Coefficient inside of the interface (default: %(default)s)",
        )
        _ = group.add_argument(
            "--beta-bar",
            choices=[str(strategy) for strategy in BetaBarStrategy],
            default=str(BetaBarStrategy.MIDPOINT),
            help="Sampling of the element averages of variable coefficients "
            + "(default: %(default)s)",
        )

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            example=namespace.example,  # pyright: ignore[reportAny]
            beta=SideValues(
                plus=namespace.beta_plus,  # pyright: ignore[reportAny]
                minus=namespace.beta_minus,  # pyright: ignore[reportAny]
            ),
            beta_bar=BetaBarStrategy(namespace.beta_bar),
        )

    def build_problem(self) -> Problem:
        problem = PROBLEM_PROFILES[self.example](self.beta)
        if isinstance(problem.coefficient, FieldCoefficient):
            return replace(
                problem, coefficient=replace(problem.coefficient, strategy=self.beta_bar)
            )
        return problem

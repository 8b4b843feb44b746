from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
from typing import Self

from ppife.exporter import Exporter
from ppife.parameters.ladder import LadderParameters
from ppife.parameters.problem import ProblemParameters
from ppife.parameters.quadrature import QuadratureParameters
from ppife.parameters.solver import SolverParameters
from ppife.parameters.verification import VerificationParameters


@dataclass(frozen=True)
class RunConfig:
    """Everything a convergence study and its property suites depend on."""

    problem: ProblemParameters
    ladder: LadderParameters
    quadrature: QuadratureParameters
    solver: SolverParameters
    verification: VerificationParameters
    exporter: Exporter

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        ProblemParameters.add_cli_arguments(parser)
        LadderParameters.add_cli_arguments(parser)
        QuadratureParameters.add_cli_arguments(parser)
        SolverParameters.add_cli_arguments(parser)
        VerificationParameters.add_cli_arguments(parser)
        Exporter.add_cli_arguments(parser)

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            problem=ProblemParameters.from_cli_arguments(namespace),
            ladder=LadderParameters.from_cli_arguments(namespace),
            quadrature=QuadratureParameters.from_cli_arguments(namespace),
            solver=SolverParameters.from_cli_arguments(namespace),
            verification=VerificationParameters.from_cli_arguments(namespace),
            exporter=Exporter.from_cli_arguments(namespace),
        )

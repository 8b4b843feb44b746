"""Convergence studies and property verification driven by a run configuration."""

from dataclasses import dataclass
import logging
from pprint import pformat
import time

from ppife.analysis.errors import ErrorReport, compute_errors
from ppife.analysis.properties import VerificationReport, verify_properties
from ppife.analysis.rates import RateTable, fit_rates
from ppife.builders.level import LevelBuilder
from ppife.errors import PpifeError
from ppife.models.problem import Problem
from ppife.parameters.run import RunConfig
from ppife.solver import solve


LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelResult:
    """Outcome of one mesh of a convergence study."""

    #: Errors against the exact solution
    report: ErrorReport
    #: Conjugate gradient iterations, 0 for a direct solve
    iterations: int
    #: Wall time of the level, in seconds
    seconds: float


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of a convergence study, possibly stopped early."""

    #: Name of the problem
    problem: str
    #: Completed levels, coarsest first
    levels: tuple[LevelResult, ...]
    #: Rates of the completed levels, if there are at least two
    table: RateTable | None
    #: Error that stopped the ladder
    error: PpifeError | None = None

    @property
    def completed(self) -> bool:
        return self.error is None


def run_level(problem: Problem, n: int, config: RunConfig) -> LevelResult:
    """Builds, solves and measures one mesh, writing its result files."""
    start = time.perf_counter()
    system = LevelBuilder(problem, n, config.quadrature).build()
    config.exporter.export_mesh_file(system.discretization.mesh)
    config.exporter.export_matrix(system)

    solver = config.solver
    solution = solve(system, solver.tolerance, solver.max_iter, solver.direct_threshold)
    if problem.exact is None:
        raise ValueError(f"Problem {problem.name} has no exact solution to measure errors against")
    report = compute_errors(
        solution,
        problem.exact,
        problem.geometry,
        problem.coefficient,
        config.quadrature.error_order,
    )
    config.exporter.export_samples(solution, problem)

    seconds = time.perf_counter() - start
    LOGGER.debug("Level N=%d done in %.2f s", n, seconds)
    return LevelResult(report=report, iterations=solution.iterations, seconds=seconds)


def run_experiment(config: RunConfig, problem: Problem | None = None) -> ExperimentResult:
    """Convergence study over the refinement ladder.

    The problem defaults to the configured benchmark. A failing level stops
    the ladder, the rates of the levels done so far are still reported.
    """
    LOGGER.info("Running experiment")
    LOGGER.debug(pformat(config))
    problem = config.problem.build_problem() if problem is None else problem

    levels: list[LevelResult] = []
    error: PpifeError | None = None
    for n in config.ladder.n_ladder:
        try:
            levels.append(run_level(problem, n, config))
        except PpifeError as exc:
            LOGGER.error("Level N=%d failed: %s", n, exc)
            error = exc
            break

    reports = [level.report for level in levels]
    table = fit_rates(reports) if len(reports) >= 2 else None
    if table is not None:
        LOGGER.info("Convergence rates of %s:\n%s", problem.name, table)
        config.exporter.export_rates(table)
    return ExperimentResult(
        problem=problem.name, levels=tuple(levels), table=table, error=error
    )


def run_properties(config: RunConfig, problem: Problem | None = None) -> VerificationReport:
    """Property suites with the configured seed, written to the properties file."""
    LOGGER.info("Running property suites")
    problem = config.problem.build_problem() if problem is None else problem
    report = verify_properties(problem, config.verification, config.quadrature, config.solver)
    config.exporter.export_properties(report)
    return report

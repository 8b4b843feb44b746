from dataclasses import replace
from pathlib import Path

import pytest

from ppife.errors import AssumptionAViolated
from ppife.exporter import Exporter
from ppife.parameters.ladder import LadderParameters
from ppife.parameters.problem import ProblemParameters
from ppife.parameters.quadrature import QuadratureParameters
from ppife.parameters.run import RunConfig
from ppife.parameters.solver import SolverParameters
from ppife.parameters.verification import VerificationParameters
from ppife.profiles.problems import example2, linear
from ppife.runner import run_experiment, run_level, run_properties
from ppife.sides import SideValues


def _config(directory: Path, n_ladder: tuple[int, ...] = (8, 16)) -> RunConfig:
    return RunConfig(
        problem=ProblemParameters(),
        ladder=LadderParameters(n_ladder=n_ladder),
        quadrature=QuadratureParameters(),
        solver=SolverParameters(),
        verification=VerificationParameters(enabled=True, samples=5, n_ladder=(8,)),
        exporter=Exporter(directory=directory),
    )


def test_run_experiment(tmp_path: Path) -> None:
    result = run_experiment(_config(tmp_path))
    assert result.completed
    assert result.problem == "example1"
    assert [level.report.n for level in result.levels] == [8, 16]
    assert all(level.iterations == 0 for level in result.levels)
    assert result.table is not None
    assert result.table.rows[1].l2_rate is not None and result.table.rows[1].l2_rate > 1.0
    assert sorted(path.name for path in tmp_path.iterdir()) == [
        "rates.csv",
        "run_N16.csv",
        "run_N8.csv",
    ]


def test_run_experiment__custom_problem(tmp_path: Path) -> None:
    result = run_experiment(_config(tmp_path), problem=linear(SideValues(1.0, 10.0)))
    assert result.problem == "linear"
    assert all(level.report.l2_error < 1e-10 for level in result.levels)


def test_run_experiment__single_level(tmp_path: Path) -> None:
    result = run_experiment(_config(tmp_path, (8,)))
    assert result.completed
    assert len(result.levels) == 1
    assert result.table is None
    assert not (tmp_path / "rates.csv").exists()


def test_run_experiment__stops_on_failure(tmp_path: Path) -> None:
    # The flower crosses an edge twice on the coarsest mesh
    result = run_experiment(_config(tmp_path, (2, 4)), problem=example2())
    assert not result.completed
    assert isinstance(result.error, AssumptionAViolated)
    assert result.levels == ()
    assert result.table is None


def test_run_level__no_exact_solution(tmp_path: Path) -> None:
    problem = replace(linear(SideValues(2.0, 1.0)), exact=None, dirichlet=lambda p: p[:, 0])
    with pytest.raises(ValueError, match="no exact solution"):
        _ = run_level(problem, 8, _config(tmp_path))


def test_run_properties(tmp_path: Path) -> None:
    report = run_properties(_config(tmp_path))
    assert report.problem == "example1"
    assert report.n_ladder == (8,)
    assert (tmp_path / "properties.txt").read_text() == str(report)

import numpy as np
import pytest
import scipy.sparse.linalg

from ppife.analysis.errors import ErrorReport, compute_errors, interpolation_errors
from ppife.analysis.properties import p1_stiffness
from ppife.builders.level import LevelBuilder
from ppife.models.problem import Problem
from ppife.profiles.problems import example1, example2, linear
from ppife.quadrature import triangle_rule
from ppife.sides import SideValues
from ppife.solver import DiscreteSolution, solve


def _errors(problem: Problem, n: int) -> ErrorReport:
    assert problem.exact is not None
    solution = solve(LevelBuilder(problem, n).build())
    return compute_errors(solution, problem.exact, problem.geometry, problem.coefficient)


def test_error_report__triple_error() -> None:
    report = ErrorReport(
        n=8,
        h=0.25,
        l2_error=1.0,
        h1_error=5.0,
        energy_error=1.0,
        edge_average=1.0,
        edge_jump=1.0,
        stabilization=1.0,
    )
    assert report.triple_error == pytest.approx(2.0)
    # The volume part of the triple norm is the coefficient weighted seminorm
    report = ErrorReport(n=8, h=0.25, l2_error=1.0, h1_error=1.0, energy_error=3.0)
    assert report.triple_error == 3.0


@pytest.mark.parametrize("beta", [(10.0, 1.0), (1.0, 1000.0)])
def test_compute_errors__linear_patch(beta: tuple[float, float]) -> None:
    report = _errors(linear(SideValues(*beta)), 8)
    assert report.l2_error < 1e-10
    assert report.h1_error < 1e-9
    assert report.energy_error < 1e-8
    assert report.triple_error < 1e-8


def test_compute_errors__example1_beta_2() -> None:
    report = _errors(example1(SideValues(2.0, 1.0)), 16)
    assert report.n == 16
    assert 1.018e-2 / 2.0 < report.l2_error < 2.0 * 1.018e-2
    assert 2.929e-1 / 2.0 < report.h1_error < 2.0 * 2.929e-1
    # beta >= 1 on both sides
    assert report.triple_error >= report.energy_error >= report.h1_error
    assert min(report.edge_average, report.edge_jump, report.stabilization) >= 0.0


def test_compute_errors__example1_beta_10() -> None:
    report = _errors(example1(SideValues(10.0, 1.0)), 32)
    assert 9.981e-4 / 2.0 < report.l2_error < 2.0 * 9.981e-4


@pytest.mark.parametrize(
    ("beta", "expected"),
    [
        ((1000.0, 1.0), 8.084e-2),
        ((1e5, 1.0), 8.127e-2),
        ((1.0, 1000.0), 3.996e-1),
        ((1.0, 1e5), 3.996e-1),
    ],
    ids=["plus-1000", "plus-1e5", "minus-1000", "minus-1e5"],
)
def test_compute_errors__high_contrast(beta: tuple[float, float], expected: float) -> None:
    # The broken H1 error does not grow with the contrast
    report = _errors(example1(SideValues(*beta)), 16)
    assert expected / 2.0 < report.h1_error < 2.0 * expected
    assert report.energy_error >= report.h1_error


@pytest.mark.slow
def test_compute_errors__example1_n64() -> None:
    report = _errors(example1(SideValues(10.0, 1.0)), 64)
    assert 2.480e-4 / 2.0 < report.l2_error < 2.0 * 2.480e-4
    assert 3.709e-2 / 2.0 < report.h1_error < 2.0 * 3.709e-2


def test_compute_errors__uniform_matches_p1() -> None:
    problem = example1(SideValues(1.0, 1.0))
    assert problem.exact is not None
    system = LevelBuilder(problem, 16).build()
    mesh = system.discretization.mesh

    # Standard linear elements on the same mesh, assembled without any cut
    rule = triangle_rule(4)
    points, weights = rule.map_many(mesh.triangle_points, np.abs(mesh.areas))
    source = problem.f(points.reshape(-1, 2)).reshape(weights.shape)
    local = np.einsum("mk,ki->mi", weights * source, rule.barycentric)
    load = np.bincount(mesh.triangles.ravel(), weights=local.ravel(), minlength=mesh.vertex_count)
    stiffness = p1_stiffness(system, 1.0)
    free = system.free
    coefficients = system.dirichlet_values.copy()
    rhs = load - stiffness @ coefficients
    coefficients[free] = scipy.sparse.linalg.spsolve(
        stiffness[free][:, free].tocsc(), rhs[free]
    )
    reference = compute_errors(
        DiscreteSolution(system.discretization, coefficients),
        problem.exact,
        problem.geometry,
        problem.coefficient,
    )

    report = compute_errors(solve(system), problem.exact, problem.geometry, problem.coefficient)
    assert report.l2_error == pytest.approx(reference.l2_error, rel=1e-3)
    assert report.h1_error == pytest.approx(reference.h1_error, rel=1e-3)
    assert report.stabilization == pytest.approx(0.0, abs=1e-10)


def test_compute_errors__variable_coefficient() -> None:
    coarse = _errors(example2(), 16)
    fine = _errors(example2(), 32)
    assert fine.l2_error < coarse.l2_error
    assert fine.h1_error < coarse.h1_error


def test_interpolation_errors() -> None:
    problem = example1(SideValues(10.0, 1.0))
    discretization = LevelBuilder(problem, 16).discretize()
    report = interpolation_errors(discretization, problem)
    assert report.n == 16
    assert 0.0 < report.l2_error < report.h1_error
    assert report.edge_average == report.edge_jump == report.stabilization == 0.0


def test_interpolation_errors__linear_patch() -> None:
    problem = linear(SideValues(1.0, 1e5))
    report = interpolation_errors(LevelBuilder(problem, 8).discretize(), problem)
    assert report.l2_error < 1e-12
    assert report.h1_error < 1e-10

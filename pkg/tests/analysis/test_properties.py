import numpy as np
import pytest

from ppife.analysis.properties import (
    PropertyResult,
    VerificationReport,
    check_basis_oracle,
    check_basis_oracle_3d,
    check_counter_example,
    consistency_residual,
    counter_example,
    random_cut_triangle,
    random_plane_cut,
    tetrahedron_family,
    verify_properties,
)
from ppife.builders.cut import build_cut_segment, vertex_signs
from ppife.builders.ife import build_ife_basis
from ppife.builders.level import LevelBuilder
from ppife.errors import SingularBasis
from ppife.helpers import barycentric, diameter
from ppife.parameters.verification import VerificationParameters
from ppife.profiles.problems import example1, example2, linear
from ppife.sides import SideValues
from ppife.solver import solve

#: Suites with an exact constant, expected to pass on any ladder
EXACT_PROPERTIES = (
    "coercivity",
    "symmetry",
    "stabilization-nonnegative",
    "triple-norm-bound",
    "sparsity",
    "galerkin-residual",
    "stabilization-continuous",
    "p1-reduction",
    "consistency",
    "lifting-duality",
    "basis-oracle",
    "denominator-bound",
    "partition-of-unity",
    "counter-example",
    "basis-oracle-3d",
    "denominator-bound-3d",
)


@pytest.fixture(scope="module")
def report() -> VerificationReport:
    return verify_properties(
        example1(SideValues(10.0, 1.0)),
        VerificationParameters(enabled=True, samples=20, seed=3, n_ladder=(8, 16)),
    )


def test_verify_properties(report: VerificationReport) -> None:
    assert report.problem == "example1"
    assert report.seed == 3
    assert report.n_ladder == (8, 16)
    results = {result.name: result for result in report.results}
    assert set(EXACT_PROPERTIES) <= set(results)
    for name in EXACT_PROPERTIES:
        assert results[name].passed, str(results[name])
    assert results["p1-reduction"].vacuous
    assert not results["lifting-duality"].vacuous
    assert not results["consistency"].vacuous


def test_verify_properties__uniform() -> None:
    report = verify_properties(
        example1(SideValues(3.0, 3.0)),
        VerificationParameters(enabled=True, samples=10, seed=1, n_ladder=(8,)),
    )
    results = {result.name: result for result in report.results}
    assert results["p1-reduction"].passed and not results["p1-reduction"].vacuous
    assert results["consistency"].passed
    assert results["lifting-duality"].vacuous
    assert results["coercivity"].passed


def test_verify_properties__variable_coefficient() -> None:
    report = verify_properties(
        example2(),
        VerificationParameters(enabled=True, samples=10, seed=2, n_ladder=(16,)),
    )
    results = {result.name: result for result in report.results}
    assert results["consistency"].vacuous
    for name in ("coercivity", "symmetry", "lifting-duality", "stabilization-continuous"):
        assert results[name].passed, str(results[name])


def test_verify_properties__deterministic(report: VerificationReport) -> None:
    again = verify_properties(
        example1(SideValues(10.0, 1.0)),
        VerificationParameters(enabled=True, samples=20, seed=3, n_ladder=(8, 16)),
    )
    assert str(again) == str(report)


@pytest.mark.parametrize("beta", [(10.0, 1.0), (1.0, 1e5)])
def test_consistency_residual__linear_patch(beta: tuple[float, float]) -> None:
    problem = linear(SideValues(*beta))
    system = LevelBuilder(problem, 8).build()
    solution = solve(system)
    residual = consistency_residual(system, problem, solution)
    scale = float(np.max(np.abs(system.matrix.data))) * float(
        np.max(np.abs(solution.coefficients))
    )
    assert float(np.max(np.abs(residual))) <= 1e-10 * scale


def test_counter_example() -> None:
    triangle, segment, beta = counter_example()
    with pytest.raises(SingularBasis) as error:
        _ = build_ife_basis(triangle, segment, beta.plus, beta.minus)
    assert abs(error.value.denominator) < 1e-10
    result = check_counter_example()
    assert result.passed
    assert not result.vacuous


def test_random_cut_triangle() -> None:
    rng = np.random.default_rng(0)
    for _ in range(20):
        triangle, geometry = random_cut_triangle(rng)
        signs = vertex_signs(geometry, triangle, 1.0)
        assert set(signs.tolist()) == {-1, 1}
        segment = build_cut_segment(geometry, triangle)
        assert float(np.linalg.norm(segment.e - segment.d)) > 0.0


def test_random_plane_cut() -> None:
    rng = np.random.default_rng(0)
    tetrahedron = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    for _ in range(10):
        anchor, normal = random_plane_cut(rng, tetrahedron)
        assert np.all(barycentric(tetrahedron, anchor) >= 0.0)
        assert float(np.linalg.norm(normal)) == pytest.approx(1.0)


def test_check_basis_oracle() -> None:
    results = check_basis_oracle(np.random.default_rng(5), 100)
    assert [result.name for result in results] == [
        "basis-oracle",
        "denominator-bound",
        "partition-of-unity",
    ]
    assert all(result.passed for result in results), [str(result) for result in results]


def test_check_basis_oracle_3d() -> None:
    results = check_basis_oracle_3d(np.random.default_rng(5), 100)
    assert all(result.passed for result in results), [str(result) for result in results]


def test_tetrahedron_family() -> None:
    family = tetrahedron_family()
    assert len(family) == 4
    diameters = [diameter(first) for first, _ in family]
    assert diameters == pytest.approx([diameters[0] / 2**level for level in range(4)])
    for first, second in family:
        shared = [
            vertex for vertex in first if np.any(np.all(np.isclose(second, vertex), axis=1))
        ]
        assert len(shared) == 3
        # The apexes lie on both sides of the common face
        normal = np.cross(shared[1] - shared[0], shared[2] - shared[0])
        sides = [
            float(normal @ (apex - shared[0]))
            for apex in (first[0], second[3])
        ]
        assert sides[0] * sides[1] < 0.0


def test_property_result__str() -> None:
    assert str(PropertyResult("symmetry", True, 1e-12)).startswith("PASS     symmetry")
    assert str(PropertyResult("symmetry", False, -1.0, "asymmetric")).startswith("FAIL")
    assert str(PropertyResult("p1", True, 0.0, vacuous=True)).startswith("VACUOUS")


def test_verification_report__str() -> None:
    results = (
        PropertyResult("symmetry", True, 1e-13),
        PropertyResult("coercivity", False, -0.5, "slack per level -5.000e-01"),
    )
    report = VerificationReport(problem="example1", seed=7, n_ladder=(8, 16), results=results)
    assert not report.passed
    assert report.failures == (results[1],)
    lines = str(report).splitlines()
    assert lines[0] == "problem=example1 seed=7 n_ladder=8,16"
    assert lines[-1] == "1/2 properties passed"
    assert str(report).endswith("\n")

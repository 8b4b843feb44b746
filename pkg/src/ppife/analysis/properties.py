"""Randomized property suites of the discrete scheme.

Each suite checks an inequality or an identity over random draws and reports
its smallest slack as a margin, negative when the property fails. Ratios
without a known constant are only required not to blow up: their largest
value over a refinement ladder must stay below twice the coarsest one.
"""

from collections.abc import Sequence
from dataclasses import dataclass
import logging
import math
from typing import override

import numpy as np
import scipy.sparse

from ppife.analysis.witnesses import (
    ScalingWitnesses,
    TetrahedronWitnesses,
    face_jump_ratio,
    scaling_witnesses,
    tetrahedron_witnesses,
)
from ppife.builders.cut import (
    TRIANGLE_EDGES,
    build_cut_segment,
    cut_segment_from_points,
    cut_sub_triangles,
)
from ppife.builders.ife import build_ife_basis, solve_ife_constraints
from ppife.builders.ife3d import build_ife_basis_3d, solve_ife_constraints_3d, tangent_plane_cut
from ppife.builders.level import LevelBuilder
from ppife.builders.lifting import COEFFICIENT_ORDER, edge_rule, edge_traces, lift_edge_jumps
from ppife.errors import SingularBasis
from ppife.helpers import FloatArray, affine_gradients_many, rotate_clockwise
from ppife.models.coefficient import Coefficient, ConstantCoefficient
from ppife.models.cut import CutPolygonQuadrature, CutSegment
from ppife.models.level_set import LineLevelSet, SphereLevelSet
from ppife.models.mesh import InterfaceEdge
from ppife.models.problem import Problem
from ppife.models.system import LinearSystem, SparseMatrix
from ppife.parameters.quadrature import QuadratureParameters
from ppife.parameters.solver import SolverParameters
from ppife.parameters.verification import VerificationParameters
from ppife.profiles.problems import linear
from ppife.quadrature import triangle_rule
from ppife.sides import Side, SideValues
from ppife.solver import DiscreteSolution, solve


LOGGER = logging.getLogger(__name__)

#: Relative slack of the coercivity inequality
COERCIVITY_SLACK = 1e-10
#: Relative rounding allowance of exact identities and sign conditions
ROUNDING = 1e-12
#: Agreement of closed form bases with their dense constraint solves
ORACLE_TOLERANCE = 1e-10
#: Lifting duality residual with constant coefficients
DUALITY_TOLERANCE = 1e-11
#: Lifting duality residual with a coefficient field
DUALITY_TOLERANCE_VARIABLE = 1e-10
#: Random interface edges the lifting duality is checked on, per level
DUALITY_DRAWS = 100
#: Consistency residual of the patch problem, relative to |A_h| |u_h|
CONSISTENCY_TOLERANCE = 1e-10
#: Largest ratio of a witness to its coarsest value
BOUND_FACTOR = 2.0
#: Exponent range of the random coefficient ratios
RATIO_EXPONENTS = (-5.0, 5.0)
#: Scaling witnesses of tetrahedra: diameter scale of the coarsest one and levels
TETRAHEDRON_SCALE = 0.2
TETRAHEDRON_LEVELS = 4
#: Coefficients of the tetrahedron witnesses when the problem has a coefficient field
TETRAHEDRON_BETA = SideValues(plus=10.0, minus=1.0)

#: The two right-isosceles triangles of a square of the Cartesian mesh
REFERENCE_TRIANGLES = (
    np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0]]),
    np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
)
#: The right-corner and the regular tetrahedra
REFERENCE_TETRAHEDRA = (
    np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
    np.array([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]),
)


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property suite."""

    #: Name of the property
    name: str
    #: Whether the property held on every draw
    passed: bool
    #: Smallest slack of the checked inequality, negative on failure
    margin: float
    #: Measured values
    detail: str = ""
    #: Passed because the property has nothing to check
    vacuous: bool = False

    @override
    def __str__(self) -> str:
        status = "VACUOUS" if self.vacuous else "PASS" if self.passed else "FAIL"
        return f"{status:<8} {self.name:<28} margin={self.margin:+.3e}  {self.detail}".rstrip()


@dataclass(frozen=True)
class VerificationReport:
    """Outcomes of the property suites of one problem."""

    #: Name of the problem
    problem: str
    #: Seed of the random draws
    seed: int
    #: Meshes the suites ran on
    n_ladder: tuple[int, ...]
    #: One result per property
    results: tuple[PropertyResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> tuple[PropertyResult, ...]:
        return tuple(result for result in self.results if not result.passed)

    @override
    def __str__(self) -> str:
        ladder = ",".join(str(n) for n in self.n_ladder)
        lines = [f"problem={self.problem} seed={self.seed} n_ladder={ladder}"]
        lines.extend(str(result) for result in self.results)
        passed = len(self.results) - len(self.failures)
        lines.append(f"{passed}/{len(self.results)} properties passed")
        return "\n".join(lines) + "\n"


def _check(name: str, margin: float, detail: str = "") -> PropertyResult:
    return PropertyResult(name=name, passed=margin >= 0.0, margin=margin, detail=detail)


def _vacuous(name: str, reason: str) -> PropertyResult:
    return PropertyResult(name=name, passed=True, margin=0.0, detail=reason, vacuous=True)


def _bounded(name: str, values: Sequence[float]) -> PropertyResult:
    """Largest value of a witness at most BOUND_FACTOR times its coarsest value."""
    margin = BOUND_FACTOR * values[0] - max(values)
    return _check(name, margin, " ".join(f"{value:.3e}" for value in values))


def _max_abs(matrix: SparseMatrix) -> float:
    return float(np.max(np.abs(matrix.data))) if matrix.nnz else 0.0


def _forms(matrix: SparseMatrix, vectors: FloatArray) -> FloatArray:
    """v' M v for each column v."""
    return np.einsum("ij,ij->j", vectors, np.asarray(matrix @ vectors))


def _random_ratio(rng: np.random.Generator) -> float:
    return float(10.0 ** rng.uniform(*RATIO_EXPONENTS))


@dataclass(frozen=True)
class _Level:
    system: LinearSystem
    solution: DiscreteSolution
    #: Random coefficient vectors, shape (n_vertices, samples)
    vectors: FloatArray


def check_coercivity(levels: Sequence[_Level]) -> PropertyResult:
    """A_h(v, v) >= 1/2 |v|_h^2."""
    margins: list[float] = []
    for level in levels:
        system = level.system
        energy = _forms(system.components.volume, level.vectors)
        form = _forms(system.matrix, level.vectors)
        margins.append(float(np.min((form - 0.5 * energy) / energy)) + COERCIVITY_SLACK)
    slacks = " ".join(f"{margin:.3e}" for margin in margins)
    return _check("coercivity", min(margins), f"slack per level {slacks}")


def check_symmetry(levels: Sequence[_Level]) -> PropertyResult:
    worst = max(
        _max_abs(level.system.matrix - level.system.matrix.T) / _max_abs(level.system.matrix)
        for level in levels
    )
    return _check("symmetry", ROUNDING - worst, f"relative asymmetry {worst:.3e}")


def check_stabilization_sign(levels: Sequence[_Level]) -> PropertyResult:
    """s_h(v, v) >= 0."""
    worst = min(
        float(
            np.min(
                _forms(level.system.components.stabilization, level.vectors)
                / _forms(level.system.components.volume, level.vectors)
            )
        )
        for level in levels
    )
    return _check("stabilization-nonnegative", worst + ROUNDING, f"min s_h/|v|_h^2 {worst:.3e}")


def _triple_squares(level: _Level) -> tuple[FloatArray, FloatArray]:
    components = level.system.components
    energy = _forms(components.volume, level.vectors)
    triple = (
        energy
        + _forms(components.edge_average, level.vectors)
        + _forms(components.edge_jump, level.vectors)
        + _forms(components.stabilization, level.vectors)
    )
    return energy, triple


def check_triple_norm_bound(levels: Sequence[_Level]) -> PropertyResult:
    """|v|_h <= |||v|||_h."""
    worst = math.inf
    for level in levels:
        energy, triple = _triple_squares(level)
        worst = min(worst, float(np.min((triple - energy) / energy)))
    return _check("triple-norm-bound", worst + ROUNDING, f"min relative gap {worst:.3e}")


def check_norm_equivalence(levels: Sequence[_Level]) -> PropertyResult:
    """|||v|||_h / |v|_h bounded under refinement."""
    ratios: list[float] = []
    for level in levels:
        energy, triple = _triple_squares(level)
        ratios.append(float(np.sqrt(np.max(triple / energy))))
    return _bounded("norm-equivalence", ratios)


def _allowed_pattern(system: LinearSystem) -> SparseMatrix:
    """Couplings through a shared element or a shared interface edge."""
    discretization = system.discretization
    triangles = discretization.mesh.triangles
    groups = [
        np.concatenate([triangles[edge.first], triangles[edge.second]])
        for edge in discretization.classification.interface_edges
    ]
    rows = np.concatenate(
        [np.repeat(triangles, 3, axis=1).ravel(), *(np.repeat(group, 6) for group in groups)]
    )
    cols = np.concatenate(
        [np.tile(triangles, (1, 3)).ravel(), *(np.tile(group, 6) for group in groups)]
    )
    pattern = scipy.sparse.coo_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=system.matrix.shape
    ).tocsr()
    pattern.data[:] = 1.0
    return pattern


def check_sparsity(levels: Sequence[_Level]) -> PropertyResult:
    outside = 0
    for level in levels:
        stored = (level.system.matrix != 0).astype(float).tocsr()
        outside += int((stored - stored.multiply(_allowed_pattern(level.system))).count_nonzero())
    return _check("sparsity", -float(outside), f"{outside} entries outside the stencil")


def check_galerkin_residual(
    levels: Sequence[_Level], solver: SolverParameters
) -> PropertyResult:
    """|A_h(u_h, phi_i) - (f, phi_i)| small on the free vertices."""
    tolerance = max(solver.tolerance, ROUNDING)
    margins: list[float] = []
    for level in levels:
        system, coefficients = level.system, level.solution.coefficients
        residual = (system.matrix @ coefficients - system.load)[system.free]
        scale = _max_abs(system.matrix) * float(np.max(np.abs(coefficients))) + float(
            np.max(np.abs(system.load))
        )
        margins.append(tolerance * scale - float(np.max(np.abs(residual), initial=0.0)))
    return _check("galerkin-residual", min(margins))


def check_continuous_stabilization(levels: Sequence[_Level], uniform: bool) -> PropertyResult:
    """s_h(u, v) and the flux terms vanish for a function without jumps."""
    name = "stabilization-continuous"
    if uniform:
        return _vacuous(name, "equal coefficients, no lifting")
    worst = 0.0
    for level in levels:
        components = level.system.components
        ones = np.ones(level.system.size)
        for matrix in (components.stabilization, components.consistency):
            scale = max(_max_abs(matrix), np.finfo(float).tiny)
            worst = max(worst, float(np.max(np.abs(matrix @ ones))) / scale)
    return _check(name, ORACLE_TOLERANCE - worst, f"relative residual {worst:.3e}")


def p1_stiffness(system: LinearSystem, beta: float) -> SparseMatrix:
    """Stiffness matrix of the standard linear elements with a constant coefficient."""
    mesh = system.discretization.mesh
    gradients = affine_gradients_many(mesh.triangle_points)
    local = (beta * np.abs(mesh.areas))[:, np.newaxis, np.newaxis] * (
        gradients @ gradients.transpose(0, 2, 1)
    )
    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    return scipy.sparse.coo_matrix(
        (local.ravel(), (rows, cols)), shape=system.matrix.shape
    ).tocsr()


def check_p1_reduction(levels: Sequence[_Level], coefficient: Coefficient) -> PropertyResult:
    """Equal coefficients give the standard stiffness matrix and no stabilization."""
    name = "p1-reduction"
    if not (coefficient.is_uniform and isinstance(coefficient, ConstantCoefficient)):
        return _vacuous(name, "needs equal constant coefficients")
    worst = 0.0
    for level in levels:
        reference = p1_stiffness(level.system, coefficient.beta.plus)
        scale = _max_abs(reference)
        worst = max(
            worst,
            _max_abs(level.system.matrix - reference) / scale,
            _max_abs(level.system.components.stabilization) / scale,
        )
    return _check(name, ROUNDING - worst, f"relative difference {worst:.3e}")


def consistency_residual(
    system: LinearSystem, problem: Problem, solution: DiscreteSolution, order: int = 6
) -> FloatArray:
    """A_h(u, phi_i) - A_h(u_h, phi_i) on the free vertices.

    The exact solution has no jumps, so only the volume and the flux average
    terms of A_h(u, phi_i) remain.
    """
    if problem.exact is None:
        raise ValueError(f"Problem {problem.name} has no exact solution")
    exact, geometry, coefficient = problem.exact, problem.geometry, problem.coefficient
    discretization = system.discretization
    mesh, classification = discretization.mesh, discretization.classification
    residual = np.zeros(system.size)

    signs = classification.element_signs
    regular = np.flatnonzero(signs != 0)
    simplices = mesh.triangle_points[regular]
    rule = triangle_rule(order)
    points, weights = rule.map_many(simplices, np.abs(mesh.areas[regular]))
    flat = points.reshape(-1, 2)
    beta = coefficient.side_values(flat, np.repeat(signs[regular] > 0, len(rule.weights)))
    gradients = exact.gradient(flat, geometry.value(flat) >= 0.0).reshape(*weights.shape, 2)
    local = np.einsum(
        "mk,mkd,mid->mi",
        weights * beta.reshape(weights.shape),
        gradients,
        affine_gradients_many(simplices),
    )
    residual += np.bincount(
        mesh.triangles[regular].ravel(), weights=local.ravel(), minlength=system.size
    )

    for index, cut in sorted(classification.cut_elements.items()):
        quadrature = cut.quadrature(order)
        points, plus = quadrature.points, quadrature.plus_mask
        beta = coefficient.side_values(points, plus)
        gradients = exact.gradient(points, geometry.value(points) >= 0.0)
        shape_gradients = discretization.bases[index].gradients(plus)
        np.add.at(
            residual,
            mesh.triangles[index],
            np.einsum("k,kd,kid->i", quadrature.weights * beta, gradients, shape_gradients),
        )

    for edge in classification.interface_edges:
        trace = edge_traces(edge, mesh.triangles, discretization.bases, coefficient)
        points = trace.rule.points
        beta = coefficient.side_values(points, trace.rule.plus_mask)
        flux = beta * (exact.gradient(points, geometry.value(points) >= 0.0) @ trace.normal)
        residual[trace.dofs] -= trace.jumps @ (trace.rule.weights * flux)

    return (residual - system.matrix @ solution.coefficients)[system.free]


def check_consistency(
    levels: Sequence[_Level],
    problem: Problem,
    quadrature: QuadratureParameters,
    solver: SolverParameters,
) -> PropertyResult:
    """A_h(u, v) = (f, v) for a solution of the straight interface patch problem.

    Its interface is resolved exactly by the cut lines and every integrand is
    polynomial, so the residual is rounding only.
    """
    name = "consistency"
    coefficient = problem.coefficient
    if not isinstance(coefficient, ConstantCoefficient):
        return _vacuous(name, "the patch problem needs constant coefficients")
    patch = linear(coefficient.beta)
    worst = 0.0
    for level in levels:
        system = LevelBuilder(patch, level.system.discretization.mesh.n, quadrature).build()
        solution = solve(system, solver.tolerance, solver.max_iter, solver.direct_threshold)
        residual = consistency_residual(system, patch, solution, quadrature.error_order)
        scale = _max_abs(system.matrix) * float(np.max(np.abs(solution.coefficients)))
        worst = max(worst, float(np.max(np.abs(residual), initial=0.0)) / scale)
    return _check(name, CONSISTENCY_TOLERANCE - worst, f"relative residual {worst:.3e}")


def lifting_duality_residual(
    edge: InterfaceEdge,
    system: LinearSystem,
    coefficient: Coefficient,
    nodal_values: FloatArray,
) -> float:
    """Largest relative defect of int beta_h r_e . w = int_e {beta_h w . n_e} [v] over W_e.

    `nodal_values` are the values of v at the vertices of the two elements,
    in increasing vertex order. The left side is integrated over the cut
    regions of both elements, independently of the closed form masses.
    """
    discretization = system.discretization
    triangles = discretization.mesh.triangles
    bases = discretization.bases
    dofs = np.unique(np.concatenate([triangles[edge.first], triangles[edge.second]]))
    functions = [
        bases[index].combine(nodal_values[np.searchsorted(dofs, triangles[index])])
        for index in edge.triangles
    ]

    rule = edge_rule(edge, bases[edge.first])
    points, weights, plus = rule.points, rule.weights, rule.plus_mask
    jump = functions[0].values(points, plus) - functions[1].values(points, plus)
    (lifting,) = lift_edge_jumps(edge, bases, coefficient, rule, jump[np.newaxis, :])
    edge_beta = coefficient.side_values(points, plus)

    defects: list[float] = []
    scales: list[float] = []
    for slot, index in enumerate(edge.triangles):
        basis = bases[index]
        segment = basis.segment
        quadrature = CutPolygonQuadrature.from_sub_triangles(
            cut_sub_triangles(basis.vertices, segment), COEFFICIENT_ORDER
        )
        mask = quadrature.plus_mask
        beta = coefficient.side_values(quadrature.points, mask)
        lifted = np.where(
            mask[:, np.newaxis], lifting.value(slot, Side.PLUS), lifting.value(slot, Side.MINUS)
        )
        # Tangential field, then the normal field weighted by the opposite coefficient
        fields = (
            (np.broadcast_to(segment.tangent, lifted.shape), np.ones(len(weights))),
            (
                np.where(mask, basis.beta.minus, basis.beta.plus)[:, np.newaxis] * segment.normal,
                np.where(plus, basis.beta.minus, basis.beta.plus),
            ),
        )
        directions = (segment.tangent, segment.normal)
        for (volume_field, edge_weight), direction in zip(fields, directions):
            left = float(quadrature.weights @ (beta * np.sum(lifted * volume_field, axis=1)))
            right = 0.5 * float(direction @ edge.normal) * float(
                weights @ (edge_beta * edge_weight * jump)
            )
            defects.append(abs(left - right))
            scales.append(abs(right))
    scale = max(max(scales), np.finfo(float).tiny)
    return max(defects) / scale


def check_lifting_duality(
    levels: Sequence[_Level], coefficient: Coefficient, rng: np.random.Generator
) -> PropertyResult:
    name = "lifting-duality"
    if coefficient.is_uniform:
        return _vacuous(name, "equal coefficients, no jumps to lift")
    tolerance = DUALITY_TOLERANCE if coefficient.is_constant else DUALITY_TOLERANCE_VARIABLE
    worst = 0.0
    for level in levels:
        edges = level.system.discretization.classification.interface_edges
        if not edges:
            continue
        for choice in rng.integers(len(edges), size=DUALITY_DRAWS):
            edge = edges[int(choice)]
            worst = max(
                worst,
                lifting_duality_residual(edge, level.system, coefficient, rng.standard_normal(4)),
            )
    return _check(name, tolerance - worst, f"relative residual {worst:.3e}")


def check_scaling(
    witnesses: Sequence[ScalingWitnesses], uniform: bool
) -> list[PropertyResult]:
    results = [
        _bounded("auxiliary-upsilon", [witness.upsilon for witness in witnesses]),
        _bounded("auxiliary-psi", [witness.psi for witness in witnesses]),
    ]
    if uniform:
        results.append(_vacuous("lifting-stability", "equal coefficients, no jumps to lift"))
        results.append(_vacuous("jump-ratio", "equal coefficients, no jumps"))
    else:
        results.append(_bounded("lifting-stability", [witness.lifting for witness in witnesses]))
        results.append(_bounded("jump-ratio", [witness.jump for witness in witnesses]))
    return results


def random_cut_triangle(
    rng: np.random.Generator,
) -> tuple[FloatArray, LineLevelSet]:
    """A Cartesian mesh triangle and a straight interface crossing two of its edges."""
    triangle = REFERENCE_TRIANGLES[int(rng.integers(len(REFERENCE_TRIANGLES)))]
    first, second = rng.choice(len(TRIANGLE_EDGES), size=2, replace=False)
    points = [
        triangle[i] + rng.uniform(0.02, 0.98) * (triangle[j] - triangle[i])
        for i, j in (TRIANGLE_EDGES[int(first)], TRIANGLE_EDGES[int(second)])
    ]
    normal = rotate_clockwise(points[1] - points[0]) * rng.choice([-1.0, 1.0])
    geometry = LineLevelSet(point=tuple(points[0]), normal=tuple(normal / np.linalg.norm(normal)))
    return triangle, geometry


def check_basis_oracle(rng: np.random.Generator, samples: int) -> list[PropertyResult]:
    """Closed form triangle bases against dense solves, on random cuts and ratios."""
    oracle = denominator = partition = 0.0
    for _ in range(samples):
        triangle, geometry = random_cut_triangle(rng)
        segment = build_cut_segment(geometry, triangle)
        beta = SideValues(plus=_random_ratio(rng), minus=1.0)
        basis = build_ife_basis(triangle, segment, beta.plus, beta.minus)
        for vertex, function in enumerate(basis.functions):
            reference = solve_ife_constraints(triangle, segment, beta, np.eye(3)[vertex])
            coefficients = np.concatenate([reference.plus, reference.minus])
            scale = max(1.0, float(np.max(np.abs(coefficients))))
            oracle = max(
                oracle,
                float(np.max(np.abs(function.plus - reference.plus))) / scale,
                float(np.max(np.abs(function.minus - reference.minus))) / scale,
            )
        slope = basis.normal_slope
        denominator = max(
            denominator,
            min(1.0, beta.ratio) - basis.denominator,
            -slope,
            slope - 1.0,
        )
        unit = np.array([1.0, 0.0, 0.0])
        partition = max(
            partition,
            float(np.max(np.abs(basis.plus_coefficients.sum(axis=0) - unit))),
            float(np.max(np.abs(basis.minus_coefficients.sum(axis=0) - unit))),
        )
    return [
        _check("basis-oracle", ORACLE_TOLERANCE - oracle, f"max difference {oracle:.3e}"),
        _check("denominator-bound", ROUNDING - denominator, f"max violation {denominator:.3e}"),
        _check("partition-of-unity", ORACLE_TOLERANCE - partition, f"max defect {partition:.3e}"),
    ]


def counter_example() -> tuple[FloatArray, CutSegment, SideValues]:
    """An obtuse triangle cut through a vertex, on which no IFE basis exists."""
    root = math.sqrt(3.0)
    triangle = np.array([[0.0, 0.0], [-root, 1.0], [1.0, 0.0]])
    d = np.array([0.0, 0.0])
    e = np.array([-1.0 / (2.0 + root), root / (2.0 + root)])
    # The plus region is the triangle D A2 E
    segment = cut_segment_from_points(triangle, np.array([0, 1, -1]), d, e)
    return triangle, segment, SideValues(plus=1.0, minus=3.0)


def check_counter_example() -> PropertyResult:
    name = "counter-example"
    triangle, segment, beta = counter_example()
    try:
        _ = build_ife_basis(triangle, segment, beta.plus, beta.minus)
    except SingularBasis as error:
        return _check(
            name, ORACLE_TOLERANCE - abs(error.denominator), f"denominator {error.denominator:.3e}"
        )
    return _check(name, -1.0, "basis built on a configuration without one")


def random_plane_cut(
    rng: np.random.Generator, tetrahedron: FloatArray
) -> tuple[FloatArray, FloatArray]:
    """A point inside a tetrahedron and a random unit normal."""
    anchor = rng.dirichlet(np.ones(4)) @ tetrahedron
    normal = rng.standard_normal(3)
    return anchor, normal / np.linalg.norm(normal)


def check_basis_oracle_3d(rng: np.random.Generator, samples: int) -> list[PropertyResult]:
    oracle = slope_violation = 0.0
    for draw in range(samples):
        tetrahedron = REFERENCE_TETRAHEDRA[draw % len(REFERENCE_TETRAHEDRA)]
        cut = tangent_plane_cut(tetrahedron, *random_plane_cut(rng, tetrahedron))
        beta_plus, beta_minus = _random_ratio(rng), 1.0
        basis = build_ife_basis_3d(tetrahedron, cut, beta_plus, beta_minus)
        for vertex, function in enumerate(basis.functions):
            reference = solve_ife_constraints_3d(
                tetrahedron, cut, beta_plus, beta_minus, np.eye(4)[vertex]
            )
            coefficients = np.concatenate([reference.plus, reference.minus])
            scale = max(1.0, float(np.max(np.abs(coefficients))))
            difference = np.concatenate(
                [function.plus - reference.plus, function.minus - reference.minus]
            )
            oracle = max(oracle, float(np.max(np.abs(difference))) / scale)
        slope = basis.normal_slope
        slope_violation = max(slope_violation, -slope, slope - 1.0)
    return [
        _check("basis-oracle-3d", ORACLE_TOLERANCE - oracle, f"max difference {oracle:.3e}"),
        _check(
            "denominator-bound-3d",
            ROUNDING - slope_violation,
            f"max violation {slope_violation:.3e}",
        ),
    ]


def tetrahedron_family(
    levels: int = TETRAHEDRON_LEVELS, scale: float = TETRAHEDRON_SCALE
) -> list[tuple[FloatArray, FloatArray]]:
    """Pairs of face sharing right-corner tetrahedra centered on a sphere, halved per level.

    The second tetrahedron is the mirror image of the first one's corner across
    their common face.
    """
    sphere = SphereLevelSet()
    center = np.array([sphere.radius, 0.0, 0.0])
    first = REFERENCE_TETRAHEDRA[0]
    second = np.vstack([first[1:], np.full((1, 3), 2.0 / 3.0)])
    centroid = first.mean(axis=0)
    return [
        (
            center + scale / 2**level * (first - centroid),
            center + scale / 2**level * (second - centroid),
        )
        for level in range(levels)
    ]


def check_scaling_3d(beta: SideValues) -> list[PropertyResult]:
    geometry = SphereLevelSet()
    family = tetrahedron_family()
    witnesses: list[TetrahedronWitnesses] = [
        tetrahedron_witnesses(first, geometry, beta) for first, _ in family
    ]
    faces = [face_jump_ratio(first, second, geometry, beta) for first, second in family]
    return [
        _bounded("auxiliary-psi-3d", [witness.psi for witness in witnesses]),
        _bounded("auxiliary-upsilon-3d", [witness.upsilon for witness in witnesses]),
        _bounded("auxiliary-theta-3d", [witness.theta for witness in witnesses]),
        _bounded("mismatch-3d", [witness.mismatch for witness in witnesses]),
        _bounded("face-jump-3d", faces),
    ]


def verify_properties(
    problem: Problem,
    parameters: VerificationParameters = VerificationParameters(),
    quadrature: QuadratureParameters = QuadratureParameters(),
    solver: SolverParameters = SolverParameters(),
) -> VerificationReport:
    """Runs every property suite on a problem over the verification ladder."""
    LOGGER.info(
        "Verifying properties of %s on N=%s",
        problem.name,
        ",".join(str(n) for n in parameters.n_ladder),
    )
    rng = np.random.default_rng(parameters.seed)
    coefficient = problem.coefficient
    uniform = coefficient.is_uniform

    levels: list[_Level] = []
    witnesses: list[ScalingWitnesses] = []
    for n in parameters.n_ladder:
        system = LevelBuilder(problem, n, quadrature).build()
        solution = solve(system, solver.tolerance, solver.max_iter, solver.direct_threshold)
        vectors = rng.standard_normal((system.size, parameters.samples))
        levels.append(_Level(system=system, solution=solution, vectors=vectors))
        discretization = system.discretization
        witnesses.append(
            scaling_witnesses(
                discretization.mesh,
                discretization.classification,
                discretization.bases,
                discretization.liftings,
                coefficient,
            )
        )

    beta_3d = coefficient.beta if isinstance(coefficient, ConstantCoefficient) else TETRAHEDRON_BETA
    results = [
        check_coercivity(levels),
        check_symmetry(levels),
        check_stabilization_sign(levels),
        check_triple_norm_bound(levels),
        check_norm_equivalence(levels),
        check_sparsity(levels),
        check_galerkin_residual(levels, solver),
        check_continuous_stabilization(levels, uniform),
        check_p1_reduction(levels, coefficient),
        check_consistency(levels, problem, quadrature, solver),
        check_lifting_duality(levels, coefficient, rng),
        *check_scaling(witnesses, uniform),
        *check_basis_oracle(rng, parameters.samples),
        check_counter_example(),
        *check_basis_oracle_3d(rng, parameters.samples),
        *check_scaling_3d(beta_3d),
    ]
    for result in results:
        if not result.passed:
            LOGGER.warning("Property %s failed: %s", result.name, result.detail)
    report = VerificationReport(
        problem=problem.name,
        seed=parameters.seed,
        n_ladder=parameters.n_ladder,
        results=tuple(results),
    )
    LOGGER.info("%d/%d properties passed", len(results) - len(report.failures), len(results))
    return report

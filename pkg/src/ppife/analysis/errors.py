"""Errors of discrete solutions against exact solutions."""

from dataclasses import dataclass
import logging

import numpy as np

from ppife.builders.ife import interpolate
from ppife.builders.lifting import edge_traces
from ppife.helpers import affine_gradients_many
from ppife.models.coefficient import Coefficient
from ppife.models.level_set import LevelSetGeometry
from ppife.models.problem import ExactSolution, Problem
from ppife.models.system import Discretization
from ppife.quadrature import triangle_rule
from ppife.solver import DiscreteSolution


LOGGER = logging.getLogger(__name__)

#: Quadrature order of the error integrals
ERROR_ORDER = 6


@dataclass(frozen=True)
class ErrorReport:
    """Norms of u - u_h on one mesh."""

    #: Number of squares per direction
    n: int
    #: Mesh size
    h: float
    #: L2 norm
    l2_error: float
    #: Broken H1 seminorm
    h1_error: float
    #: Broken coefficient weighted H1 seminorm, the volume part of the triple norm
    energy_error: float = 0.0
    #: Edge term of the coefficient weighted gradient averages
    edge_average: float = 0.0
    #: Edge term of the jumps
    edge_jump: float = 0.0
    #: Square root of s_h(e, e)
    stabilization: float = 0.0

    @property
    def triple_error(self) -> float:
        return float(
            np.sqrt(
                self.energy_error**2
                + self.edge_average**2
                + self.edge_jump**2
                + self.stabilization**2
            )
        )


def _volume_errors(
    sol: DiscreteSolution,
    exact: ExactSolution,
    geom: LevelSetGeometry,
    coefficient: Coefficient,
    order: int,
) -> tuple[float, float, float]:
    """L2 error, broken H1 and coefficient weighted H1 seminorms of the error."""
    mesh = sol.discretization.mesh
    classification = sol.discretization.classification
    signs = classification.element_signs
    rule = triangle_rule(order)

    regular = np.flatnonzero(signs != 0)
    simplices = mesh.triangle_points[regular]
    nodal = sol.coefficients[mesh.triangles[regular]]
    points, weights = rule.map_many(simplices, np.abs(mesh.areas[regular]))
    points = points.reshape(-1, 2)
    weights = weights.ravel()
    true_plus = geom.value(points) >= 0.0
    discrete_plus = np.repeat(signs[regular] > 0, len(rule.weights))
    values = (nodal @ rule.barycentric.T).ravel()
    gradients = np.repeat(
        np.einsum("mi,mid->md", nodal, affine_gradients_many(simplices)),
        len(rule.weights),
        axis=0,
    )
    beta = coefficient.side_values(points, discrete_plus)
    squares = np.sum((exact.gradient(points, true_plus) - gradients) ** 2, axis=1)
    l2 = [weights * (exact.value(points, true_plus) - values) ** 2]
    h1 = [weights * squares]
    energy = [weights * beta * squares]

    # The discrete side follows the cut line, the exact side the level set
    for index, cut in sorted(classification.cut_elements.items()):
        basis = sol.discretization.bases[index]
        nodal = sol.coefficients[mesh.triangles[index]]
        quadrature = cut.quadrature(order)
        points, weights, plus = quadrature.points, quadrature.weights, quadrature.plus_mask
        true_plus = geom.value(points) >= 0.0
        values = basis.values(points, plus) @ nodal
        gradients = np.einsum("kid,i->kd", basis.gradients(plus), nodal)
        beta = coefficient.side_values(points, plus)
        squares = np.sum((exact.gradient(points, true_plus) - gradients) ** 2, axis=1)
        l2.append(weights * (exact.value(points, true_plus) - values) ** 2)
        h1.append(weights * squares)
        energy.append(weights * beta * squares)

    return (
        float(np.sqrt(np.sum(np.concatenate(l2)))),
        float(np.sqrt(np.sum(np.concatenate(h1)))),
        float(np.sqrt(np.sum(np.concatenate(energy)))),
    )


def _edge_errors(
    sol: DiscreteSolution,
    exact: ExactSolution,
    geom: LevelSetGeometry,
    coefficient: Coefficient,
) -> tuple[float, float, float]:
    """Edge terms of the triple norm, the exact solution has no jumps across edges."""
    discretization = sol.discretization
    mesh = discretization.mesh
    average_total = 0.0
    for edge in discretization.classification.interface_edges:
        trace = edge_traces(edge, mesh.triangles, discretization.bases, coefficient)
        points, weights = trace.rule.points, trace.rule.weights
        nodal = sol.coefficients[trace.dofs]
        beta = coefficient.side_values(points, trace.rule.plus_mask)
        exact_average = beta[:, np.newaxis] * exact.gradient(points, geom.value(points) >= 0.0)
        discrete_average = np.einsum("i,ikd->kd", nodal, trace.gradient_averages)
        average_total += float(
            weights @ np.sum((exact_average - discrete_average) ** 2, axis=1)
        )

    jump_total = stabilization_total = 0.0
    if sol.components is not None:
        coefficients = sol.coefficients
        jump_total = float(coefficients @ (sol.components.edge_jump @ coefficients))
        stabilization_total = float(
            coefficients @ (sol.components.stabilization @ coefficients)
        )
    return (
        float(np.sqrt(mesh.h * average_total)),
        float(np.sqrt(max(jump_total, 0.0))),
        float(np.sqrt(max(stabilization_total, 0.0))),
    )


def compute_errors(
    sol: DiscreteSolution,
    exact: ExactSolution,
    geom: LevelSetGeometry,
    coefficient: Coefficient,
    order: int = ERROR_ORDER,
) -> ErrorReport:
    """L2, broken H1 and triple norm errors of a discrete solution."""
    mesh = sol.discretization.mesh
    LOGGER.info("Computing errors on the %dx%d mesh", mesh.n, mesh.n)
    l2_error, h1_error, energy_error = _volume_errors(sol, exact, geom, coefficient, order)
    edge_average, edge_jump, stabilization = _edge_errors(sol, exact, geom, coefficient)
    report = ErrorReport(
        n=mesh.n,
        h=mesh.h,
        l2_error=l2_error,
        h1_error=h1_error,
        energy_error=energy_error,
        edge_average=edge_average,
        edge_jump=edge_jump,
        stabilization=stabilization,
    )
    LOGGER.debug("%s", report)
    return report


def interpolation_errors(
    discretization: Discretization, problem: Problem, order: int = ERROR_ORDER
) -> ErrorReport:
    """Errors of the IFE interpolant of the exact solution, without any solve."""
    if problem.exact is None:
        raise ValueError(f"Problem {problem.name} has no exact solution")
    coefficients = interpolate(
        discretization.mesh,
        discretization.classification,
        discretization.bases,
        problem.u,
    )
    interpolant = DiscreteSolution(discretization=discretization, coefficients=coefficients)
    l2_error, h1_error, energy_error = _volume_errors(
        interpolant, problem.exact, problem.geometry, problem.coefficient, order
    )
    mesh = discretization.mesh
    return ErrorReport(
        n=mesh.n, h=mesh.h, l2_error=l2_error, h1_error=h1_error, energy_error=energy_error
    )

"""Solution of the assembled system and evaluation of discrete solutions."""

from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse
import scipy.sparse.linalg
from numpy.typing import ArrayLike

from ppife.errors import NotConverged
from ppife.helpers import FloatArray, affine_gradients, as_points, barycentric
from ppife.models.system import Discretization, LinearSystem, SystemComponents


LOGGER = logging.getLogger(__name__)

#: Default relative residual of the conjugate gradient
DEFAULT_TOLERANCE = 1e-12
#: Systems with fewer free vertices are factorized
DIRECT_THRESHOLD = 70_000
#: Relative residual a factorization must reach, its rounding grows with the contrast
FACTORIZATION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class DiscreteSolution:
    """Nodal coefficients of an IFE function."""

    #: Space the function lives in
    discretization: Discretization
    #: Values at the mesh vertices
    coefficients: FloatArray
    #: Conjugate gradient iterations, 0 for a direct solve
    iterations: int = 0
    #: Relative residual of the reduced system
    residual: float = 0.0
    #: Bilinear forms of the system the function solves, if any
    components: SystemComponents | None = None

    def values(self, points: ArrayLike) -> FloatArray:
        """Values at points, located one by one."""
        return np.array([evaluate(self, point) for point in as_points(points)])


def _jacobi(matrix: scipy.sparse.csr_matrix) -> scipy.sparse.linalg.LinearOperator:
    diagonal = matrix.diagonal()
    return scipy.sparse.linalg.aslinearoperator(scipy.sparse.diags(1.0 / diagonal))


def _relative_residual(
    matrix: scipy.sparse.csr_matrix, rhs: FloatArray, solution: FloatArray
) -> float:
    norm = float(np.linalg.norm(rhs))
    residual = float(np.linalg.norm(rhs - matrix @ solution))
    return residual / norm if norm > 0.0 else residual


def solve(
    system: LinearSystem,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int | None = None,
    direct_threshold: int = DIRECT_THRESHOLD,
) -> DiscreteSolution:
    """Solves the system reduced to its free vertices.

    Conjugate gradient with a diagonal preconditioner, or a sparse
    factorization below `direct_threshold` free vertices.
    """
    matrix, rhs = system.reduced()
    size = matrix.shape[0]
    iterations = 0
    limit = 2.0 * tol

    if size == 0:
        free_values = np.zeros(0)
    elif size < direct_threshold:
        LOGGER.info("Factorizing system of %d unknowns", size)
        limit = max(limit, FACTORIZATION_TOLERANCE)
        free_values = np.asarray(scipy.sparse.linalg.spsolve(matrix.tocsc(), rhs), dtype=float)
        # rhs . A^-1 rhs > 0 holds for any positive definite A
        if float(rhs @ free_values) <= 0.0 < float(np.linalg.norm(rhs)):
            raise NotConverged(iterations, _relative_residual(matrix, rhs, free_values))
    else:
        LOGGER.info("Solving system of %d unknowns with conjugate gradient", size)
        max_iter = 10 * size if max_iter is None else max_iter

        def count(_: FloatArray) -> None:
            nonlocal iterations
            iterations += 1

        free_values, info = scipy.sparse.linalg.cg(  # pyright: ignore[reportUnknownVariableType]
            matrix,
            rhs,
            rtol=tol,
            atol=0.0,
            maxiter=max_iter,
            M=_jacobi(matrix),
            callback=count,
        )
        if info != 0:
            raise NotConverged(iterations, _relative_residual(matrix, rhs, free_values))
        LOGGER.debug("Conjugate gradient converged in %d iterations", iterations)

    residual = _relative_residual(matrix, rhs, free_values) if size else 0.0
    # Also catches the NaN of a singular factorization
    if not residual <= limit:
        raise NotConverged(iterations, residual)
    return DiscreteSolution(
        discretization=system.discretization,
        coefficients=system.expand(free_values),
        iterations=iterations,
        residual=residual,
        components=system.components,
    )


def evaluate(sol: DiscreteSolution, x: ArrayLike) -> float:
    """Value of a discrete solution at a point of the domain."""
    mesh = sol.discretization.mesh
    point = np.asarray(x, dtype=float)
    triangle = mesh.locate(point)
    basis = sol.discretization.bases.get(triangle)
    nodal = sol.coefficients[mesh.triangles[triangle]]
    if basis is not None:
        return basis.combine(nodal)(point)
    return float(barycentric(mesh.triangle_points[triangle], point)[0] @ nodal)


def evaluate_gradient(sol: DiscreteSolution, x: ArrayLike) -> FloatArray:
    """Gradient of a discrete solution at a point, on the side given by the cut line."""
    mesh = sol.discretization.mesh
    point = np.asarray(x, dtype=float)
    triangle = mesh.locate(point)
    basis = sol.discretization.bases.get(triangle)
    nodal = sol.coefficients[mesh.triangles[triangle]]
    if basis is not None:
        function = basis.combine(nodal)
        return function.gradient(basis.segment.side_of(point)).copy()
    return nodal @ affine_gradients(mesh.triangle_points[triangle])

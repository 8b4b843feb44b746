"""Scale invariant ratios whose boundedness under refinement is checked.

Most witnesses are the largest value of a ratio of two quadratic forms over
the local functions, computed as a generalized eigenvalue restricted to the
range of the denominator.
"""

from dataclasses import dataclass
import logging

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from ppife.builders.ife import build_auxiliary
from ppife.builders.ife3d import (
    build_auxiliary_3d,
    build_ife_basis_3d,
    side_quadrature,
    tangent_plane_from_level_set,
)
from ppife.builders.lifting import edge_traces
from ppife.helpers import FloatArray, diameter
from ppife.models.coefficient import Coefficient
from ppife.models.ife import IfeBasis
from ppife.models.ife3d import IfeBasis3, SideQuadrature
from ppife.models.level_set import LevelSetGeometry
from ppife.models.lifting import EdgeLiftings
from ppife.models.mesh import MeshClassification, TriMesh
from ppife.quadrature import subdivided_triangle_rule
from ppife.sides import SideValues


LOGGER = logging.getLogger(__name__)

#: Eigenvalues of a denominator below this fraction of its largest one span its kernel
KERNEL_FRACTION = 1e-10
#: Quadrature order of the squares of piecewise affine functions
SQUARE_ORDER = 2
#: Halvings of a tetrahedron face carrying the face jump quadrature
FACE_DEPTH = 4


def largest_ratio(numerator: FloatArray, denominator: FloatArray) -> float:
    """max of v' N v / v' D v over v outside the kernel of D."""
    values, vectors = scipy.linalg.eigh(denominator)
    keep = values > KERNEL_FRACTION * max(float(values[-1]), 0.0)
    if not np.any(keep):
        return 0.0
    # Orthonormal in the D inner product
    scaled = vectors[:, keep] / np.sqrt(values[keep])
    projected = scaled.T @ numerator @ scaled
    return float(np.max(scipy.linalg.eigvalsh(0.5 * (projected + projected.T))))


@dataclass(frozen=True)
class ScalingWitnesses:
    """Largest scaled local ratios on one mesh."""

    #: Number of squares per direction
    n: int
    #: Mesh size
    h: float
    #: max |Upsilon|^2 / h^4
    upsilon: float
    #: max |Psi_D|^2 / h^2 and |Psi_E|^2 / h^2
    psi: float
    #: max h^(1/2) |r_e(phi)| / |phi|_L2(e), coefficient weighted
    lifting: float
    #: max |[phi]_e|^2_L2(e) / (h |grad phi|^2_L2(T1 u T2))
    jump: float


def auxiliary_ratios(
    mesh: TriMesh, classification: MeshClassification, coefficient: Coefficient
) -> tuple[float, float]:
    """Largest scaled L2 norms of Upsilon and of Psi_D, Psi_E over the interface elements."""
    upsilon = psi = 0.0
    for cut in classification.cut_elements.values():
        beta = coefficient.beta_bars(cut.segment)
        triple = build_auxiliary(cut.vertices, cut.segment, beta.plus, beta.minus)
        quadrature = cut.quadrature(SQUARE_ORDER)
        points, weights, plus = quadrature.points, quadrature.weights, quadrature.plus_mask
        upsilon = max(upsilon, float(weights @ triple.upsilon.values(points, plus) ** 2))
        for function in (triple.psi_d, triple.psi_e):
            psi = max(psi, float(weights @ function.values(points, plus) ** 2))
    return upsilon / mesh.h**4, psi / mesh.h**2


def _element_gradient_mass(
    basis: IfeBasis, classification: MeshClassification, index: int
) -> FloatArray:
    quadrature = classification.cut_elements[index].quadrature(SQUARE_ORDER)
    gradients = basis.gradients(quadrature.plus_mask)
    return np.einsum("k,kid,kjd->ij", quadrature.weights, gradients, gradients)


def edge_ratios(
    mesh: TriMesh,
    classification: MeshClassification,
    bases: dict[int, IfeBasis],
    liftings: tuple[EdgeLiftings, ...],
    coefficient: Coefficient,
) -> tuple[float, float]:
    """Largest lifting stability and jump ratios over the interface edges."""
    lifting = jump = 0.0
    for edge, edge_liftings in zip(classification.interface_edges, liftings):
        assert edge.index == edge_liftings.edge, "Liftings do not follow the interface edges"
        trace = edge_traces(edge, mesh.triangles, bases, coefficient)
        weights = trace.rule.weights
        jump_mass = (trace.jumps * weights) @ trace.jumps.T

        gradient_mass = np.zeros_like(jump_mass)
        for triangle in edge.triangles:
            rows = np.searchsorted(trace.dofs, mesh.triangles[triangle])
            gradient_mass[np.ix_(rows, rows)] += _element_gradient_mass(
                bases[triangle], classification, triangle
            )

        lifting = max(lifting, largest_ratio(mesh.h * edge_liftings.gram(), jump_mass))
        jump = max(jump, largest_ratio(jump_mass, mesh.h * gradient_mass))
    return float(np.sqrt(lifting)), jump


def scaling_witnesses(
    mesh: TriMesh,
    classification: MeshClassification,
    bases: dict[int, IfeBasis],
    liftings: tuple[EdgeLiftings, ...],
    coefficient: Coefficient,
) -> ScalingWitnesses:
    upsilon, psi = auxiliary_ratios(mesh, classification, coefficient)
    lifting, jump = edge_ratios(mesh, classification, bases, liftings, coefficient)
    witnesses = ScalingWitnesses(
        n=mesh.n, h=mesh.h, upsilon=upsilon, psi=psi, lifting=lifting, jump=jump
    )
    LOGGER.debug("%s", witnesses)
    return witnesses


@dataclass(frozen=True)
class TetrahedronWitnesses:
    """Scaled local ratios on one cut tetrahedron."""

    #: Diameter
    h: float
    #: |Psi|^2 / h^3
    psi: float
    #: |Upsilon|^2 / h^5
    upsilon: float
    #: max over the tangents of |Theta_i|^2 / h^5
    theta: float
    #: max |I^ v - I v|^2 / (h^5 |I v|^2_H1), pieces picked by the plane or by the interface
    mismatch: float


def _shape_values(
    basis: IfeBasis3, points: FloatArray, plus_mask: NDArray[np.bool_]
) -> FloatArray:
    """Values of the four shape functions, shape (4, k)."""
    return np.stack([function.values(points, plus_mask) for function in basis.functions])


def _gradient_mass_3d(basis: IfeBasis3, quadrature: SideQuadrature) -> FloatArray:
    gradients = np.stack(
        [function.gradients(quadrature.plus_mask) for function in basis.functions], axis=1
    )
    return np.einsum("k,kid,kjd->ij", quadrature.weights, gradients, gradients)


def _cut_basis(
    tet: FloatArray, geometry: LevelSetGeometry, beta: SideValues
) -> IfeBasis3:
    cut = tangent_plane_from_level_set(tet, geometry)
    return build_ife_basis_3d(tet, cut, beta.plus, beta.minus)


def tetrahedron_witnesses(
    tet: ArrayLike, geometry: LevelSetGeometry, beta: SideValues
) -> TetrahedronWitnesses:
    """Auxiliary function norms and mismatch ratio on a tetrahedron cut by a curved interface."""
    vertices = np.asarray(tet, dtype=float)
    h = diameter(vertices)
    basis = _cut_basis(vertices, geometry, beta)
    auxiliary = build_auxiliary_3d(vertices, basis.cut, beta.plus, beta.minus, basis)
    quadrature = side_quadrature(vertices, geometry, basis.cut, order=SQUARE_ORDER)
    points, weights, plus = quadrature.points, quadrature.weights, quadrature.plus_mask

    def square_norm(function_values: FloatArray) -> float:
        return float(weights @ function_values**2)

    psi = square_norm(auxiliary.psi.values(points, plus))
    upsilon = square_norm(auxiliary.upsilon.values(points, plus))
    theta = max(
        square_norm(auxiliary.theta_1.values(points, plus)),
        square_norm(auxiliary.theta_2.values(points, plus)),
    )

    # Both interpolants share their pieces and differ where the plane and the interface disagree
    mismatched = quadrature.plane_plus_mask != plus
    jumps = np.stack([function.jump(points) for function in basis.functions])
    mismatch_mass = (jumps * (weights * mismatched)) @ jumps.T
    mismatch = largest_ratio(mismatch_mass, h**5 * _gradient_mass_3d(basis, quadrature))

    return TetrahedronWitnesses(
        h=h,
        psi=psi / h**3,
        upsilon=upsilon / h**5,
        theta=theta / h**5,
        mismatch=mismatch,
    )


def _shared_face(first: FloatArray, second: FloatArray) -> tuple[list[int], list[int]]:
    """Local indices in both tetrahedra of the vertices of their common face."""
    pairs = [
        (i, j)
        for i in range(4)
        for j in range(4)
        if np.allclose(first[i], second[j], rtol=0.0, atol=1e-14)
    ]
    if len(pairs) != 3:
        raise ValueError(f"Tetrahedra share {len(pairs)} vertices, a face needs 3")
    return [i for i, _ in pairs], [j for _, j in pairs]


def face_jump_ratio(
    first: ArrayLike,
    second: ArrayLike,
    geometry: LevelSetGeometry,
    beta: SideValues,
    depth: int = FACE_DEPTH,
) -> float:
    """max |[phi]_F|^2_L2(F) / (h |grad phi|^2_L2(T1 u T2)) over IFE functions on two tetrahedra."""
    tetrahedra = (np.asarray(first, dtype=float), np.asarray(second, dtype=float))
    shared_first, shared_second = _shared_face(*tetrahedra)

    # Global numbering: the vertices of the first tetrahedron, then the apex of the second
    apex = next(j for j in range(4) if j not in shared_second)
    numbering = (np.arange(4), np.zeros(4, dtype=int))
    numbering[1][shared_second] = shared_first
    numbering[1][apex] = 4
    h = max(diameter(tet) for tet in tetrahedra)

    face_points, face_weights = subdivided_triangle_rule(tetrahedra[0][shared_first], depth)
    face_plus = geometry.value(face_points) >= 0.0
    jumps = np.zeros((5, len(face_weights)))
    gradient_mass = np.zeros((5, 5))
    for sign, tet, dofs in zip((1.0, -1.0), tetrahedra, numbering):
        basis = _cut_basis(tet, geometry, beta)
        jumps[dofs] += sign * _shape_values(basis, face_points, face_plus)
        quadrature = side_quadrature(tet, geometry, order=SQUARE_ORDER)
        gradient_mass[np.ix_(dofs, dofs)] += _gradient_mass_3d(basis, quadrature)

    jump_mass = (jumps * face_weights) @ jumps.T
    return largest_ratio(jump_mass, h * gradient_mass)

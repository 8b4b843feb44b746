"""Linear IFE shape functions, interpolation and auxiliary functions."""

from collections.abc import Callable
from dataclasses import dataclass
import logging

import numpy as np
from numpy.typing import ArrayLike

from ppife.errors import SingularBasis
from ppife.helpers import FloatArray, affine_coefficients, diameter
from ppife.models.coefficient import Coefficient
from ppife.models.cut import CutSegment
from ppife.models.ife import AuxiliaryTriple, IfeBasis, PiecewiseAffine
from ppife.models.mesh import MeshClassification, TriMesh
from ppife.sides import Side, SideValues


LOGGER = logging.getLogger(__name__)

#: Below this magnitude the basis denominator is considered singular
SINGULAR_DENOMINATOR = 1e-12


def _vertex_sides(
    vertices: FloatArray, segment: CutSegment
) -> tuple[Side, Side, Side]:
    distances = segment.signed_distance(vertices)
    sides = tuple(Side.PLUS if distance >= 0.0 else Side.MINUS for distance in distances)
    return sides  # pyright: ignore[reportReturnType]


def _build_basis(
    triangle: ArrayLike, segment: CutSegment, beta: SideValues
) -> IfeBasis:
    vertices = np.asarray(triangle, dtype=float)
    hats = affine_coefficients(vertices)
    normal = segment.normal
    h = diameter(vertices)

    # One sided distance function w: n . (x - D) on the plus side, 0 on the minus side
    distance = np.concatenate([[-normal @ segment.d], normal])
    distances = segment.signed_distance(vertices)
    nodal_w = np.where(distances > 1e-14 * h, distances, 0.0)
    interpolated_w = nodal_w @ hats

    ratio = beta.ratio - 1.0
    denominator = 1.0 + ratio * float(interpolated_w[1:] @ normal)
    if abs(denominator) < SINGULAR_DENOMINATOR:
        raise SingularBasis(denominator)

    functions: list[PiecewiseAffine] = []
    for hat in hats:
        factor = ratio * float(hat[1:] @ normal) / denominator
        functions.append(
            PiecewiseAffine(
                plus=hat + factor * (distance - interpolated_w),
                minus=hat - factor * interpolated_w,
                segment=segment,
            )
        )

    return IfeBasis(
        vertices=vertices,
        segment=segment,
        beta=beta,
        functions=(functions[0], functions[1], functions[2]),
        vertex_sides=_vertex_sides(vertices, segment),
        hats=hats,
        distance_nodal_values=nodal_w,
        denominator=denominator,
    )


def build_ife_basis(
    triangle: ArrayLike, segment: CutSegment, beta_plus: float, beta_minus: float
) -> IfeBasis:
    if beta_plus <= 0.0 or beta_minus <= 0.0:
        raise ValueError(f"Coefficients must be positive: {beta_plus}, {beta_minus}")
    return _build_basis(triangle, segment, SideValues(beta_plus, beta_minus))


def build_ife_basis_variable(
    triangle: ArrayLike,
    segment: CutSegment,
    beta_bar_plus: float,
    beta_bar_minus: float,
) -> IfeBasis:
    """Basis of the variable coefficient space, from element averages of the coefficient."""
    return build_ife_basis(triangle, segment, beta_bar_plus, beta_bar_minus)


def eval_basis(
    basis: IfeBasis, i: int, point: ArrayLike, side: Side
) -> tuple[float, FloatArray]:
    function = basis.functions[i]
    return float(function.value(point, side)[0]), function.gradient(side).copy()


def solve_ife_constraints(
    triangle: ArrayLike,
    segment: CutSegment,
    beta: SideValues,
    nodal_values: ArrayLike,
) -> PiecewiseAffine:
    """The IFE function with given nodal values, from a dense solve of its six constraints."""
    vertices = np.asarray(triangle, dtype=float)
    values = np.asarray(nodal_values, dtype=float)
    normal = segment.normal
    scale = max(beta.plus, beta.minus)

    matrix = np.zeros((6, 6))
    rhs = np.zeros(6)
    for row, (vertex, side) in enumerate(zip(vertices, _vertex_sides(vertices, segment))):
        offset = 0 if side is Side.PLUS else 3
        matrix[row, offset : offset + 3] = [1.0, *vertex]
        rhs[row] = values[row]
    for row, point in ((3, segment.d), (4, segment.e)):
        matrix[row, :3] = [1.0, *point]
        matrix[row, 3:] = [-1.0, *(-point)]
    matrix[5, 1:3] = beta.plus / scale * normal
    matrix[5, 4:6] = -beta.minus / scale * normal

    solution = np.linalg.solve(matrix, rhs)
    return PiecewiseAffine(solution[:3], solution[3:], segment)


def _one_sided_interpolation(
    basis: IfeBasis, plus_piece: FloatArray
) -> PiecewiseAffine:
    """z - I z, for z equal to an affine function on the plus side and 0 on the minus side."""
    nodal = np.array(
        [
            float(plus_piece[0] + plus_piece[1:] @ vertex) if side is Side.PLUS else 0.0
            for vertex, side in zip(basis.vertices, basis.vertex_sides)
        ]
    )
    z = PiecewiseAffine(plus_piece, np.zeros(3), basis.segment)
    return z - basis.combine(nodal)


def build_auxiliary(
    triangle: ArrayLike, segment: CutSegment, beta_plus: float, beta_minus: float
) -> AuxiliaryTriple:
    basis = build_ife_basis(triangle, segment, beta_plus, beta_minus)
    normal, tangent = segment.normal, segment.tangent
    d, e = segment.d, segment.e

    # Scaled distance to the cut line
    upsilon = np.concatenate([[-normal @ d], normal]) / beta_plus
    # Tangential coordinates, equal to 1 at one cut point and 0 at the other
    psi_d = np.concatenate([[-tangent @ e], tangent]) / float(tangent @ (d - e))
    psi_e = np.concatenate([[-tangent @ d], tangent]) / float(tangent @ (e - d))

    return AuxiliaryTriple(
        upsilon=_one_sided_interpolation(basis, upsilon),
        psi_d=_one_sided_interpolation(basis, psi_d),
        psi_e=_one_sided_interpolation(basis, psi_e),
    )


@dataclass(frozen=True)
class IfeBasisBuilder:
    """Builds the shape functions of every interface element of a mesh."""

    #: Classified mesh
    classification: MeshClassification
    #: Diffusion coefficient
    coefficient: Coefficient

    def build(self) -> dict[int, IfeBasis]:
        LOGGER.info(
            "Building IFE bases on %d interface elements",
            len(self.classification.cut_elements),
        )
        bases: dict[int, IfeBasis] = {}
        for index, cut in sorted(self.classification.cut_elements.items()):
            beta = self.coefficient.beta_bars(cut.segment)
            if self.coefficient.is_constant:
                bases[index] = build_ife_basis(cut.vertices, cut.segment, beta.plus, beta.minus)
            else:
                bases[index] = build_ife_basis_variable(
                    cut.vertices, cut.segment, beta.plus, beta.minus
                )
        return bases


def interpolate(
    mesh: TriMesh,
    classification: MeshClassification,
    bases: dict[int, IfeBasis],
    v: Callable[[FloatArray], FloatArray],
) -> FloatArray:
    """Nodal coefficients of the IFE interpolant of v."""
    assert set(bases) == set(classification.cut_elements), "Bases do not match the mesh"
    return np.asarray(v(mesh.vertices), dtype=float)

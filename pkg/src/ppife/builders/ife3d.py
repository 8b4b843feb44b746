"""IFE shape functions on tetrahedra, tangent plane cuts and true side quadrature."""

import logging
import warnings

import numpy as np
import scipy.spatial
from numpy.typing import ArrayLike

from ppife.builders.cut import SNAP_TOLERANCE, edge_intersection
from ppife.builders.ife import SINGULAR_DENOMINATOR
from ppife.errors import AngleConditionViolated, AssumptionAViolated, DegenerateCut, SingularBasis
from ppife.helpers import FloatArray, affine_coefficients, diameter, normalize
from ppife.models.ife3d import (
    Auxiliary3,
    CutType,
    IfeBasis3,
    PiecewiseAffine3,
    SideQuadrature,
    TangentPlaneCut,
)
from ppife.models.level_set import LevelSetGeometry
from ppife.quadrature import tetrahedron_rule
from ppife.sides import Side, SideValues


LOGGER = logging.getLogger(__name__)

#: Local edges of a tetrahedron, in the order the anchor point is searched
TETRAHEDRON_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
#: Local faces of a tetrahedron, the face k is opposite to the vertex k
TETRAHEDRON_FACES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
#: Relative accuracy sought for the volumes of the two sides of a curved interface
TRUE_SIDE_TOLERANCE = 1e-6
#: Maximum number of halvings of the sub-tetrahedra straddling the interface
MAX_DEPTH = 5

RIGHT_ANGLE = 0.5 * np.pi


def tangent_frame(normal: ArrayLike) -> FloatArray:
    """Two tangents completing the normal into a right-handed orthonormal frame.

    The first one is the projection of the coordinate axis least aligned with
    the normal.
    """
    unit = normalize(normal)
    axis = np.eye(3)[int(np.argmin(np.abs(unit)))]
    first = normalize(axis - (axis @ unit) * unit)
    return np.stack([first, np.cross(unit, first)])


def _crossings(tetrahedron: FloatArray, values: FloatArray) -> list[FloatArray]:
    """Zeros of the affine interpolant of values on the sign changing edges."""
    plus = values >= 0.0
    return [
        tetrahedron[i] + values[i] / (values[i] - values[j]) * (tetrahedron[j] - tetrahedron[i])
        for i, j in TETRAHEDRON_EDGES
        if plus[i] != plus[j]
    ]


def _hull_volume(points: FloatArray) -> float:
    if len(points) < 4:
        return 0.0
    try:
        return float(scipy.spatial.ConvexHull(points).volume)
    except scipy.spatial.QhullError:
        return 0.0


def _decompose(points: FloatArray) -> list[FloatArray]:
    """Tetrahedra filling the convex hull of points."""
    if len(points) < 4:
        return []
    try:
        triangulation = scipy.spatial.Delaunay(points)
    except scipy.spatial.QhullError:
        return []
    return list(points[triangulation.simplices])


def clip_tetrahedron(
    tetrahedron: FloatArray, values: FloatArray
) -> tuple[list[FloatArray], list[FloatArray]]:
    """Splits a tetrahedron along the zero set of the affine interpolant of nodal values.

    Returns the sub-tetrahedra of the plus and of the minus side.
    """
    plus = values >= 0.0
    if plus.all():
        return [tetrahedron], []
    if not plus.any():
        return [], [tetrahedron]
    crossings = _crossings(tetrahedron, values)
    return (
        _decompose(np.vstack([tetrahedron[plus], *crossings])),
        _decompose(np.vstack([tetrahedron[~plus], *crossings])),
    )


def plane_clipped_volumes(tet: ArrayLike, point: ArrayLike, normal: ArrayLike) -> SideValues:
    """Volumes of the parts of a tetrahedron on both sides of a plane."""
    vertices = np.asarray(tet, dtype=float)
    values = (vertices - np.asarray(point, dtype=float)) @ np.asarray(normal, dtype=float)
    total = abs(float(np.linalg.det(vertices[1:] - vertices[0]))) / 6.0
    plus = values >= 0.0
    if plus.all():
        return SideValues(total, 0.0)
    if not plus.any():
        return SideValues(0.0, total)
    plus_volume = _hull_volume(np.vstack([vertices[plus], *_crossings(vertices, values)]))
    return SideValues(plus_volume, total - plus_volume)


def tangent_plane_cut(
    tet: ArrayLike,
    point: ArrayLike,
    normal: ArrayLike,
    vertex_sides: tuple[Side, Side, Side, Side] | None = None,
    tangents: ArrayLike | None = None,
) -> TangentPlaneCut:
    """The cut by the plane through a point with a given normal.

    Vertex sides default to the sides of the plane.
    """
    vertices = np.asarray(tet, dtype=float)
    anchor = np.asarray(point, dtype=float)
    unit = normalize(normal)
    frame = tangent_frame(unit) if tangents is None else np.asarray(tangents, dtype=float)
    sides = vertex_sides
    if sides is None:
        distances = (vertices - anchor) @ unit
        sides = tuple(  # pyright: ignore[reportAssignmentType]
            Side.PLUS if distance >= 0.0 else Side.MINUS for distance in distances
        )
    return TangentPlaneCut(
        anchor=anchor,
        normal=unit,
        tangents=frame,
        vertex_sides=sides,
        volumes=plane_clipped_volumes(vertices, anchor, unit),
    )


def tangent_plane_from_level_set(tet: ArrayLike, geometry: LevelSetGeometry) -> TangentPlaneCut:
    """The plane tangent to the interface at its point on the first cut edge."""
    vertices = np.asarray(tet, dtype=float)
    values = geometry.value(vertices)
    plus = values >= 0.0
    cut_edges = [(i, j) for i, j in TETRAHEDRON_EDGES if plus[i] != plus[j]]
    if not cut_edges:
        raise AssumptionAViolated("The interface does not cross any edge of the tetrahedron")
    i, j = cut_edges[0]
    anchor = edge_intersection(geometry, vertices[i], vertices[j])

    normal = normalize(geometry.gradient(anchor[np.newaxis, :])[0])
    sides = tuple(Side.PLUS if flag else Side.MINUS for flag in plus)
    LOGGER.debug("Tangent plane at %s with normal %s", anchor, normal)
    return tangent_plane_cut(vertices, anchor, normal, sides)  # pyright: ignore[reportArgumentType]


def classify_cut_type(
    tet: ArrayLike, point: ArrayLike, normal: ArrayLike, snap: float = SNAP_TOLERANCE
) -> CutType:
    """Number of edges a plane crosses: three, four or none."""
    vertices = np.asarray(tet, dtype=float)
    distances = (vertices - np.asarray(point, dtype=float)) @ normalize(normal)
    if np.any(np.abs(distances) <= snap * diameter(vertices)):
        raise DegenerateCut("The plane passes through a vertex of the tetrahedron")
    crossed = sum(1 for i, j in TETRAHEDRON_EDGES if distances[i] * distances[j] < 0.0)
    match crossed:
        case 0:
            return CutType.NONE
        case 3:
            return CutType.THREE_EDGE
        case 4:
            return CutType.FOUR_EDGE
    raise DegenerateCut(f"A plane cannot cross {crossed} edges of a tetrahedron")


def _angle(u: FloatArray, v: FloatArray) -> float:
    cosine = float(u @ v) / float(np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.arccos(np.clip(cosine, -1.0, 1.0)))


def face_angles(tet: ArrayLike) -> FloatArray:
    """The twelve angles of the four faces."""
    vertices = np.asarray(tet, dtype=float)
    angles: list[float] = []
    for face in TETRAHEDRON_FACES:
        for k in range(3):
            corner, first, second = (vertices[face[(k + m) % 3]] for m in range(3))
            angles.append(_angle(first - corner, second - corner))
    return np.array(angles)


def dihedral_angles(tet: ArrayLike) -> FloatArray:
    """The six angles between faces, one per edge."""
    vertices = np.asarray(tet, dtype=float)
    angles: list[float] = []
    for i, j in TETRAHEDRON_EDGES:
        k, m = (index for index in range(4) if index not in (i, j))
        axis = normalize(vertices[j] - vertices[i])
        first = vertices[k] - vertices[i]
        second = vertices[m] - vertices[i]
        angles.append(_angle(first - (first @ axis) * axis, second - (second @ axis) * axis))
    return np.array(angles)


def check_angle_conditions(tet: ArrayLike, tolerance: float = 1e-12) -> bool:
    """Whether no face or dihedral angle is obtuse, warns otherwise."""
    largest_face = float(np.max(face_angles(tet)))
    largest_dihedral = float(np.max(dihedral_angles(tet)))
    if largest_face <= RIGHT_ANGLE + tolerance and largest_dihedral <= RIGHT_ANGLE + tolerance:
        return True
    warnings.warn(
        f"Obtuse tetrahedron: face angle {np.degrees(largest_face):.2f} deg, "
        + f"dihedral angle {np.degrees(largest_dihedral):.2f} deg",
        AngleConditionViolated,
        stacklevel=3,
    )
    return False


def build_ife_basis_3d(
    tet: ArrayLike, cut: TangentPlaneCut, beta_plus: float, beta_minus: float
) -> IfeBasis3:
    """Shape functions phi_i = hat_i + c_i (w - I w) on the plus side, hat_i - c_i I w else.

    w is the distance to the plane on the plus vertices and 0 on the minus ones.
    """
    if beta_plus <= 0.0 or beta_minus <= 0.0:
        raise ValueError(f"Coefficients must be positive: {beta_plus}, {beta_minus}")
    vertices = np.asarray(tet, dtype=float)
    _ = check_angle_conditions(vertices)
    hats = affine_coefficients(vertices)
    normal = cut.normal
    beta = SideValues(beta_plus, beta_minus)

    distance = np.concatenate([[-normal @ cut.anchor], normal])
    plus_vertices = np.array([side is Side.PLUS for side in cut.vertex_sides])
    nodal_w = np.where(plus_vertices, cut.signed_distance(vertices), 0.0)
    interpolated_w = nodal_w @ hats

    ratio = beta.ratio - 1.0
    denominator = 1.0 + ratio * float(interpolated_w[1:] @ normal)
    if abs(denominator) < SINGULAR_DENOMINATOR:
        raise SingularBasis(denominator)

    factors = ratio * (hats[:, 1:] @ normal) / denominator
    functions = tuple(
        PiecewiseAffine3(
            plus=hat + factor * (distance - interpolated_w),
            minus=hat - factor * interpolated_w,
            cut=cut,
        )
        for hat, factor in zip(hats, factors)
    )
    return IfeBasis3(
        vertices=vertices,
        cut=cut,
        beta=beta,
        functions=functions,  # pyright: ignore[reportArgumentType]
        hats=hats,
        distance_nodal_values=nodal_w,
        denominator=denominator,
    )


def solve_ife_constraints_3d(
    tet: ArrayLike,
    cut: TangentPlaneCut,
    beta_plus: float,
    beta_minus: float,
    nodal_values: ArrayLike,
) -> PiecewiseAffine3:
    """The IFE function with the given nodal values, from the dense 8x8 system."""
    vertices = np.asarray(tet, dtype=float)
    matrix = np.zeros((8, 8))
    rhs = np.zeros(8)
    for row, (vertex, side) in enumerate(zip(vertices, cut.vertex_sides)):
        offset = 0 if side is Side.PLUS else 4
        matrix[row, offset : offset + 4] = np.concatenate([[1.0], vertex])
    rhs[:4] = np.asarray(nodal_values, dtype=float)

    anchor = np.concatenate([[1.0], cut.anchor])
    matrix[4] = np.concatenate([anchor, -anchor])
    for row, tangent in enumerate(cut.tangents, start=5):
        derivative = np.concatenate([[0.0], tangent])
        matrix[row] = np.concatenate([derivative, -derivative])
    flux = np.concatenate([[0.0], cut.normal])
    matrix[7] = np.concatenate([beta_plus * flux, -beta_minus * flux])

    try:
        solution = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularBasis(float(np.linalg.det(matrix))) from exc
    return PiecewiseAffine3(plus=solution[:4], minus=solution[4:], cut=cut)


def build_auxiliary_3d(
    tet: ArrayLike,
    cut: TangentPlaneCut,
    beta_plus: float,
    beta_minus: float,
    basis: IfeBasis3 | None = None,
) -> Auxiliary3:
    """z - I z for one sided affine functions z, zero on the minus side."""
    vertices = np.asarray(tet, dtype=float)
    shape_functions = (
        build_ife_basis_3d(vertices, cut, beta_plus, beta_minus) if basis is None else basis
    )

    def one_sided(plus: FloatArray) -> PiecewiseAffine3:
        z = PiecewiseAffine3(plus=plus, minus=np.zeros(4), cut=cut)
        nodal = [
            float(z.value(vertex, side)[0]) for vertex, side in zip(vertices, cut.vertex_sides)
        ]
        return z - shape_functions.combine(nodal)

    def coordinate(direction: FloatArray) -> FloatArray:
        return np.concatenate([[-direction @ cut.anchor], direction])

    first, second = cut.tangents
    return Auxiliary3(
        psi=one_sided(np.array([1.0, 0.0, 0.0, 0.0])),
        upsilon=one_sided(coordinate(cut.normal) / beta_plus),
        theta_1=one_sided(coordinate(first)),
        theta_2=one_sided(coordinate(second)),
    )


def _subdivide(tetrahedra: FloatArray) -> FloatArray:
    """Eight children per tetrahedron, the inner octahedron split along one diagonal."""
    if len(tetrahedra) == 0:
        return tetrahedra
    v0, v1, v2, v3 = (tetrahedra[:, k] for k in range(4))
    m01, m02, m03 = 0.5 * (v0 + v1), 0.5 * (v0 + v2), 0.5 * (v0 + v3)
    m12, m13, m23 = 0.5 * (v1 + v2), 0.5 * (v1 + v3), 0.5 * (v2 + v3)
    children = [
        (v0, m01, m02, m03),
        (m01, v1, m12, m13),
        (m02, m12, v2, m23),
        (m03, m13, m23, v3),
        (m02, m13, m01, m12),
        (m02, m13, m12, m23),
        (m02, m13, m23, m03),
        (m02, m13, m03, m01),
    ]
    return np.concatenate([np.stack(child, axis=1) for child in children])


def _diameters(tetrahedra: FloatArray) -> FloatArray:
    return np.max(
        [np.linalg.norm(tetrahedra[:, i] - tetrahedra[:, j], axis=1) for i, j in TETRAHEDRON_EDGES],
        axis=0,
    )


def _midpoint_deviations(
    geometry: LevelSetGeometry, tetrahedra: FloatArray, values: FloatArray
) -> FloatArray:
    """Distance-like gap between the level set and its affine interpolant at edge midpoints."""
    gaps = []
    for i, j in TETRAHEDRON_EDGES:
        midpoints = 0.5 * (tetrahedra[:, i] + tetrahedra[:, j])
        gaps.append(np.abs(geometry.value(midpoints) - 0.5 * (values[:, i] + values[:, j])))
    slopes = np.linalg.norm(geometry.gradient(tetrahedra.reshape(-1, 3)), axis=1).reshape(-1, 4)
    return np.max(gaps, axis=0) / np.maximum(np.max(slopes, axis=1), np.finfo(float).tiny)


def _true_side_pieces(
    tetrahedron: FloatArray, geometry: LevelSetGeometry, tolerance: float, max_depth: int
) -> tuple[list[FloatArray], list[bool]]:
    """Sub-tetrahedra lying on one side of the interface, up to the leaf clipping error."""
    scale = diameter(tetrahedron)
    pieces: list[FloatArray] = []
    sides: list[bool] = []
    active = tetrahedron[np.newaxis]
    for depth in range(max_depth + 1):
        values = geometry.value(active.reshape(-1, 3)).reshape(-1, 4)
        slopes = np.linalg.norm(geometry.gradient(active.reshape(-1, 3)), axis=1).reshape(-1, 4)
        distances = np.min(np.abs(values) / np.maximum(slopes, np.finfo(float).tiny), axis=1)
        changes = np.any(values >= 0.0, axis=1) & np.any(values < 0.0, axis=1)
        near = changes | (distances < _diameters(active))

        pieces.extend(active[~near])
        sides.extend(bool(value >= 0.0) for value in values[~near, 0])

        candidates, candidate_values = active[near], values[near]
        if depth == max_depth:
            settled = np.ones(len(candidates), dtype=bool)
        else:
            deviations = _midpoint_deviations(geometry, candidates, candidate_values)
            settled = deviations <= tolerance * scale
        for candidate, value in zip(candidates[settled], candidate_values[settled]):
            plus, minus = clip_tetrahedron(candidate, value)
            pieces.extend(plus + minus)
            sides.extend([True] * len(plus) + [False] * len(minus))

        active = _subdivide(candidates[~settled])
        if len(active) == 0:
            break
    else:
        LOGGER.debug("Interface resolved down to depth %d", max_depth)
    return pieces, sides


def side_quadrature(
    tet: ArrayLike,
    geometry: LevelSetGeometry,
    cut: TangentPlaneCut | None = None,
    order: int = 2,
    tolerance: float = TRUE_SIDE_TOLERANCE,
    max_depth: int = MAX_DEPTH,
) -> SideQuadrature:
    """Quadrature on a tetrahedron, each point tagged with its side of the interface.

    Sub-tetrahedra straddling the interface are halved until the level set is
    flat enough on them, or `max_depth` is reached, and then split along the
    affine interpolant of the level set. If a cut is given the pieces are
    also split along its plane, so that the plane side of each point is known
    exactly.
    """
    vertices = np.asarray(tet, dtype=float)
    pieces, sides = _true_side_pieces(vertices, geometry, tolerance, max_depth)
    plane_sides = list(sides)

    if cut is not None:
        split_pieces: list[FloatArray] = []
        split_sides: list[bool] = []
        plane_sides = []
        for piece, side in zip(pieces, sides):
            plus, minus = clip_tetrahedron(piece, cut.signed_distance(piece))
            split_pieces.extend(plus + minus)
            split_sides.extend([side] * (len(plus) + len(minus)))
            plane_sides.extend([True] * len(plus) + [False] * len(minus))
        pieces, sides = split_pieces, split_sides

    rule = tetrahedron_rule(order)
    simplices = np.stack(pieces)
    volumes = np.abs(np.linalg.det(simplices[:, 1:] - simplices[:, :1])) / 6.0
    points, weights = rule.map_many(simplices, volumes)
    count = len(rule.weights)
    return SideQuadrature(
        points=points.reshape(-1, 3),
        weights=weights.ravel(),
        plus_mask=np.repeat(np.array(sides, dtype=bool), count),
        plane_plus_mask=np.repeat(np.array(plane_sides, dtype=bool), count),
    )


def true_side_volumes(
    tet: ArrayLike,
    geometry: LevelSetGeometry,
    tolerance: float = TRUE_SIDE_TOLERANCE,
    max_depth: int = MAX_DEPTH,
) -> SideValues:
    """Volumes of the two sides of a curved interface within a tetrahedron."""
    return side_quadrature(
        tet, geometry, order=1, tolerance=tolerance, max_depth=max_depth
    ).volumes

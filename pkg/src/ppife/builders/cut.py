"""Intersections of the interface with mesh edges and triangles."""

import logging

import numpy as np
import scipy.optimize
from numpy.typing import ArrayLike

from ppife.errors import AssumptionAViolated, DegenerateCut, NoBracket
from ppife.helpers import (
    FloatArray,
    as_points,
    diameter,
    normalize,
    rotate_clockwise,
    signed_area,
)
from ppife.models.cut import CutPolygonQuadrature, CutSegment, SubTriangle
from ppife.models.level_set import LevelSetGeometry
from ppife.sides import Side


LOGGER = logging.getLogger(__name__)

#: Relative tolerance of the edge root finder
ROOT_TOLERANCE = 1e-13
#: Vertices closer than this (relative to h) to the interface are snapped onto it
SNAP_TOLERANCE = 1e-12
#: Sub-regions smaller than this fraction of the element are degenerate
DEGENERATE_FRACTION = 1e-14

#: Local edges of a triangle, the edge k is opposite to the vertex k + 2
TRIANGLE_EDGES = ((0, 1), (1, 2), (2, 0))


def classify_point(
    geometry: LevelSetGeometry, point: ArrayLike, tolerance: float = 0.0
) -> Side:
    return Side.from_value(geometry(point), tolerance)


def ordered_endpoints(a: ArrayLike, b: ArrayLike) -> tuple[FloatArray, FloatArray]:
    """Canonical order of a segment's endpoints (by y, then x)."""
    start = np.asarray(a, dtype=float)
    end = np.asarray(b, dtype=float)
    if tuple(start[::-1]) <= tuple(end[::-1]):
        return start, end
    return end, start


def edge_intersection(
    geometry: LevelSetGeometry,
    a: ArrayLike,
    b: ArrayLike,
    tolerance: float = ROOT_TOLERANCE,
) -> FloatArray:
    """Point of the interface on the segment [a, b]."""
    start, end = ordered_endpoints(a, b)
    value_start, value_end = geometry.value(np.stack([start, end]))
    if value_start == 0.0:
        return start
    if value_end == 0.0:
        return end
    if value_start * value_end > 0.0:
        raise NoBracket(float(value_start), float(value_end))

    direction = end - start

    def restricted(t: float) -> float:
        return geometry(start + t * direction)

    # Brent's method: bisection safeguarded secant / inverse quadratic steps
    root = scipy.optimize.brentq(  # pyright: ignore[reportUnknownMemberType]
        restricted, 0.0, 1.0, xtol=tolerance, rtol=4 * np.finfo(float).eps
    )
    return start + float(root) * direction


def vertex_signs(
    geometry: LevelSetGeometry,
    points: ArrayLike,
    h: float,
    snap: float = SNAP_TOLERANCE,
) -> np.ndarray:
    """Signs of the level set at vertices, 0 for vertices snapped onto the interface."""
    points_array = as_points(points)
    values = geometry.value(points_array)
    gradient_norms = np.linalg.norm(geometry.gradient(points_array), axis=1)
    signs = np.sign(values).astype(int)
    signs[np.abs(values) <= snap * h * gradient_norms] = 0
    return signs


def has_double_root(
    geometry: LevelSetGeometry,
    a: FloatArray,
    b: FloatArray,
    signs: tuple[int, int],
) -> bool:
    """Three point sign test: same sign at both ends, opposite sign in the middle."""
    if signs[0] == 0 or signs[0] != signs[1]:
        return False
    return bool(geometry(0.5 * (a + b)) * signs[0] < 0.0)


def cut_segment_from_points(
    triangle: FloatArray, signs: np.ndarray, d: FloatArray, e: FloatArray
) -> CutSegment:
    """Orient the line DE so that its normal points to the plus vertices."""
    direction = e - d
    if np.linalg.norm(direction) == 0.0:
        raise DegenerateCut("The interface touches the element at a single point")
    normal = rotate_clockwise(normalize(direction))
    reference = int(np.flatnonzero(signs)[0])
    if signs[reference] * float((triangle[reference] - d) @ normal) < 0.0:
        normal = -normal
    return CutSegment(d=d, e=e, normal=normal, tangent=rotate_clockwise(normal))


def cut_points_from_roots(
    triangle: FloatArray,
    signs: np.ndarray,
    roots: dict[int, FloatArray],
) -> tuple[FloatArray, FloatArray]:
    """D and E from the roots on the sign changing local edges.

    `roots` maps local edge indices (see `TRIANGLE_EDGES`) to intersection points.
    """
    zero_vertices = [int(i) for i in np.flatnonzero(signs == 0)]
    if len(roots) == 2 and not zero_vertices:
        first, second = sorted(roots)
        return roots[first], roots[second]
    if len(roots) == 1 and len(zero_vertices) == 1:
        (edge,) = roots
        return triangle[zero_vertices[0]], roots[edge]
    raise AssumptionAViolated(
        f"The interface crosses {len(roots)} edges "
        + f"and touches {len(zero_vertices)} vertices"
    )


def build_cut_segment(
    geometry: LevelSetGeometry,
    triangle: ArrayLike,
    snap: float = SNAP_TOLERANCE,
) -> CutSegment:
    vertices = np.asarray(triangle, dtype=float)
    signs = vertex_signs(geometry, vertices, diameter(vertices), snap)
    roots: dict[int, FloatArray] = {}
    for local_edge, (i, j) in enumerate(TRIANGLE_EDGES):
        if has_double_root(geometry, vertices[i], vertices[j], (signs[i], signs[j])):
            raise AssumptionAViolated(f"Edge {i}-{j} carries two interface points")
        if signs[i] * signs[j] < 0:
            roots[local_edge] = edge_intersection(geometry, vertices[i], vertices[j])
    d, e = cut_points_from_roots(vertices, signs, roots)
    return cut_segment_from_points(vertices, signs, d, e)


def _closest_point_index(
    candidates: tuple[FloatArray, FloatArray], start: FloatArray, end: FloatArray
) -> int:
    """Which candidate lies on the line through start and end."""
    direction = end - start
    distances = [
        abs(float(direction[0] * (c - start)[1] - direction[1] * (c - start)[0]))
        for c in candidates
    ]
    return int(np.argmin(distances))


def _sub_triangles(
    triangle: FloatArray, segment: CutSegment
) -> list[tuple[FloatArray, Side]]:
    h = diameter(triangle)
    distances = segment.signed_distance(triangle)
    on_line = np.abs(distances) <= 1e-14 * h
    sides = [Side.PLUS if distance > 0 else Side.MINUS for distance in distances]

    match int(np.count_nonzero(on_line)):
        case 0:
            # One vertex alone on its side, the two others form a quadrilateral
            lone = next(
                (
                    k
                    for k in range(3)
                    if sides[k] is not sides[(k + 1) % 3]
                    and sides[k] is not sides[(k + 2) % 3]
                ),
                None,
            )
            if lone is None:
                raise DegenerateCut("The cut line does not cross the element")
            a, b, c = (triangle[(lone + k) % 3] for k in range(3))
            candidates = (segment.d, segment.e)
            first = _closest_point_index(candidates, a, b)
            x1, x2 = candidates[first], candidates[1 - first]
            lone_side = sides[lone]
            other_side = lone_side.opposite
            pieces = [(np.stack([a, x1, x2]), lone_side)]
            # Fan the quadrilateral x1, b, c, x2 along its shorter diagonal
            if np.linalg.norm(x1 - c) <= np.linalg.norm(b - x2):
                pieces += [
                    (np.stack([x1, b, c]), other_side),
                    (np.stack([x1, c, x2]), other_side),
                ]
            else:
                pieces += [
                    (np.stack([x1, b, x2]), other_side),
                    (np.stack([b, c, x2]), other_side),
                ]
            return pieces
        case 1:
            # The cut goes through a vertex and the opposite edge
            k = int(np.flatnonzero(on_line)[0])
            a, b, c = (triangle[(k + i) % 3] for i in range(3))
            candidates = (segment.d, segment.e)
            x = candidates[
                int(np.argmax([np.linalg.norm(point - a) for point in candidates]))
            ]
            return [
                (np.stack([a, b, x]), sides[(k + 1) % 3]),
                (np.stack([a, x, c]), sides[(k + 2) % 3]),
            ]
    raise DegenerateCut("The cut line goes along an edge of the element")


def cut_sub_triangles(
    triangle: ArrayLike, segment: CutSegment
) -> tuple[SubTriangle, ...]:
    """Sub-triangulation of the two regions of a cut triangle."""
    vertices = np.asarray(triangle, dtype=float)
    total_area = abs(signed_area(vertices))
    pieces = tuple(
        SubTriangle(piece, side, abs(signed_area(piece)))
        for piece, side in _sub_triangles(vertices, segment)
    )
    areas = {
        side: sum(piece.area for piece in pieces if piece.side is side)
        for side in (Side.PLUS, Side.MINUS)
    }
    if min(areas.values()) < DEGENERATE_FRACTION * total_area:
        raise DegenerateCut(
            f"Degenerate cut: areas {areas[Side.PLUS]:.3e} / {areas[Side.MINUS]:.3e}"
        )
    return pieces


def cut_quadrature(
    triangle: ArrayLike, segment: CutSegment, order: int
) -> CutPolygonQuadrature:
    return CutPolygonQuadrature.from_sub_triangles(
        cut_sub_triangles(triangle, segment), order
    )

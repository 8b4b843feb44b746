from dataclasses import dataclass
import logging

import numpy as np

from ppife.builders.cut import (
    SNAP_TOLERANCE,
    TRIANGLE_EDGES,
    cut_points_from_roots,
    cut_segment_from_points,
    cut_sub_triangles,
    edge_intersection,
    vertex_signs,
)
from ppife.dimensions import Rectangle
from ppife.errors import AssumptionAViolated, DegenerateCut
from ppife.helpers import FloatArray, IntArray, normalize, rotate_clockwise
from ppife.models.level_set import LevelSetGeometry
from ppife.models.mesh import (
    CutElement,
    InterfaceEdge,
    MeshClassification,
    TriMesh,
)
from ppife.sides import Side


LOGGER = logging.getLogger(__name__)

#: Number of times degenerate cuts are snapped and reclassified
MAX_SNAP_PASSES = 3


@dataclass(frozen=True)
class CartesianMeshBuilder:
    """N x N squares, each cut along its bottom-left to top-right diagonal."""

    #: Domain to mesh
    domain: Rectangle
    #: Number of squares per direction
    n: int

    def _build_vertices(self) -> FloatArray:
        xs = np.linspace(self.domain.x_min, self.domain.x_max, self.n + 1)
        ys = np.linspace(self.domain.y_min, self.domain.y_max, self.n + 1)
        grid_x, grid_y = np.meshgrid(xs, ys)
        return np.stack([grid_x.ravel(), grid_y.ravel()], axis=1)

    def _build_triangles(self) -> IntArray:
        i, j = np.meshgrid(np.arange(self.n), np.arange(self.n))
        v00 = (j * (self.n + 1) + i).ravel()
        v10 = v00 + 1
        v01 = v00 + self.n + 1
        v11 = v01 + 1
        lower = np.stack([v00, v10, v11], axis=1)
        upper = np.stack([v00, v11, v01], axis=1)
        # Triangle 2k is the lower one of square k, 2k + 1 the upper one
        return np.stack([lower, upper], axis=1).reshape(-1, 3).astype(np.int64)

    @staticmethod
    def _build_edges(triangles: IntArray) -> tuple[IntArray, IntArray, IntArray]:
        local = triangles[:, np.array(TRIANGLE_EDGES)]
        pairs = np.sort(local.reshape(-1, 2), axis=1)
        edges, inverse = np.unique(pairs, axis=0, return_inverse=True)
        inverse = inverse.reshape(-1)
        triangle_edges = inverse.reshape(-1, 3)

        owners = np.repeat(np.arange(len(triangles)), 3)
        order = np.argsort(inverse, kind="stable")
        counts = np.bincount(inverse, minlength=len(edges))
        starts = np.cumsum(counts) - counts
        sorted_owners = owners[order]
        edge_triangles = np.full((len(edges), 2), -1, dtype=np.int64)
        edge_triangles[:, 0] = sorted_owners[starts]
        shared = counts == 2
        edge_triangles[shared, 1] = sorted_owners[starts[shared] + 1]
        return edges.astype(np.int64), edge_triangles, triangle_edges.astype(np.int64)

    def build(self) -> TriMesh:
        if self.n < 2:
            raise ValueError(f"The mesh needs at least 2 squares per direction: {self.n}")
        LOGGER.info("Building %dx%d mesh of %s", self.n, self.n, self.domain)
        vertices = self._build_vertices()
        triangles = self._build_triangles()
        edges, edge_triangles, triangle_edges = self._build_edges(triangles)
        boundary_vertices = np.zeros(len(vertices), dtype=bool)
        boundary_vertices[edges[edge_triangles[:, 1] < 0].ravel()] = True
        hx = self.domain.length / self.n
        hy = self.domain.width / self.n
        return TriMesh(
            domain=self.domain,
            n=self.n,
            vertices=vertices,
            triangles=triangles,
            edges=edges,
            edge_triangles=edge_triangles,
            triangle_edges=triangle_edges,
            boundary_vertices=boundary_vertices,
            h=float(np.hypot(hx, hy)),
        )


def build_cartesian_mesh(domain: Rectangle, n: int) -> TriMesh:
    return CartesianMeshBuilder(domain, n).build()


def _suggested_n(n: int) -> int:
    return 2 ** int(np.ceil(np.log2(2 * n)))


@dataclass(frozen=True)
class MeshClassificationBuilder:
    """Classifies elements and edges of a mesh against an interface."""

    #: Mesh to classify
    mesh: TriMesh
    #: Interface
    geometry: LevelSetGeometry
    #: Vertices closer than snap * h to the interface are moved onto it
    snap: float = SNAP_TOLERANCE

    def _check_double_roots(self, signs: IntArray) -> None:
        mesh = self.mesh
        a = mesh.vertices[mesh.edges[:, 0]]
        b = mesh.vertices[mesh.edges[:, 1]]
        start_signs = signs[mesh.edges[:, 0]]
        same = (start_signs != 0) & (start_signs == signs[mesh.edges[:, 1]])
        middle = self.geometry.value(0.5 * (a + b))
        offenders = np.flatnonzero(same & (middle * start_signs < 0.0))
        if len(offenders):
            edge = int(offenders[0])
            raise AssumptionAViolated(
                f"Edge {edge} carries two interface points",
                element=int(mesh.edge_triangles[edge, 0]),
                suggested_n=_suggested_n(mesh.n),
            )

    def _edge_roots(self, signs: IntArray) -> dict[int, FloatArray]:
        mesh = self.mesh
        crossing = signs[mesh.edges[:, 0]] * signs[mesh.edges[:, 1]] < 0
        return {
            int(edge): edge_intersection(
                self.geometry,
                mesh.vertices[mesh.edges[edge, 0]],
                mesh.vertices[mesh.edges[edge, 1]],
            )
            for edge in np.flatnonzero(crossing)
        }

    def _cut_element(
        self, triangle: int, signs: IntArray, roots: dict[int, FloatArray]
    ) -> CutElement:
        mesh = self.mesh
        vertices = mesh.triangle_points[triangle]
        local_signs = signs[mesh.triangles[triangle]]
        local_roots = {
            local_edge: roots[int(edge)]
            for local_edge, edge in enumerate(mesh.triangle_edges[triangle])
            if int(edge) in roots
        }
        try:
            d, e = cut_points_from_roots(vertices, local_signs, local_roots)
        except AssumptionAViolated as error:
            raise AssumptionAViolated(
                error.reason, element=triangle, suggested_n=_suggested_n(mesh.n)
            ) from error
        segment = cut_segment_from_points(vertices, local_signs, d, e)
        return CutElement(
            index=triangle,
            vertices=vertices,
            segment=segment,
            sub_triangles=cut_sub_triangles(vertices, segment),
        )

    def _classify_elements(
        self, signs: IntArray
    ) -> tuple[IntArray, dict[int, CutElement], dict[int, FloatArray]]:
        mesh = self.mesh
        roots = self._edge_roots(signs)
        triangle_signs = signs[mesh.triangles]
        crossing = np.zeros(mesh.edge_count, dtype=bool)
        crossing[list(roots)] = True
        is_interface = crossing[mesh.triangle_edges].any(axis=1)

        element_signs = np.where(
            triangle_signs.max(axis=1) > 0, 1, np.where(triangle_signs.min(axis=1) < 0, -1, 1)
        ).astype(np.int64)
        element_signs[is_interface] = 0

        cut_elements: dict[int, CutElement] = {}
        degenerate: list[int] = []
        for triangle in np.flatnonzero(is_interface):
            try:
                cut_elements[int(triangle)] = self._cut_element(int(triangle), signs, roots)
            except DegenerateCut:
                degenerate.append(int(triangle))

        if degenerate:
            raise _Degenerate(degenerate)
        return element_signs, cut_elements, roots

    def _snap_degenerate(self, signs: IntArray, triangles: list[int]) -> IntArray:
        """Move the vertices of the smaller region of degenerate cuts onto the interface."""
        snapped = signs.copy()
        values = self.geometry.value(self.mesh.vertices)
        for triangle in triangles:
            vertices = self.mesh.triangles[triangle]
            local_signs = signs[vertices]
            local_values = np.abs(values[vertices])
            nonzero = local_signs != 0
            # The closest vertex to the interface is the one of the sliver
            candidate = vertices[nonzero][np.argmin(local_values[nonzero])]
            snapped[candidate] = 0
        LOGGER.debug("Snapped %d vertices onto the interface", int(np.sum(snapped != signs)))
        return snapped

    def _interface_edges(
        self, cut_elements: dict[int, CutElement], roots: dict[int, FloatArray]
    ) -> tuple[InterfaceEdge, ...]:
        mesh = self.mesh
        interface_edges: list[InterfaceEdge] = []
        for edge, split in sorted(roots.items()):
            first, second = (int(t) for t in mesh.edge_triangles[edge])
            if second < 0:
                LOGGER.debug("Boundary edge %d crosses the interface, no jump terms", edge)
                continue
            if first not in cut_elements or second not in cut_elements:
                raise AssumptionAViolated(
                    f"Interface edge {edge} is not shared by two interface elements",
                    element=first,
                    suggested_n=_suggested_n(mesh.n),
                )
            endpoints = mesh.vertices[mesh.edges[edge]]
            normal = rotate_clockwise(normalize(endpoints[1] - endpoints[0]))
            centroids = mesh.triangle_points[[first, second]].mean(axis=1)
            if float(normal @ (centroids[1] - centroids[0])) < 0.0:
                normal = -normal
            interface_edges.append(
                InterfaceEdge(
                    index=edge,
                    endpoints=endpoints,
                    first=first,
                    second=second,
                    normal=normal,
                    split=split,
                )
            )
        return tuple(interface_edges)

    def _check_curvature(self, cut_elements: dict[int, CutElement]) -> None:
        if not cut_elements:
            return
        points = np.stack([cut.segment.d for cut in cut_elements.values()])
        curvature = float(np.max(self.geometry.curvature(points)))
        if curvature * self.mesh.h > 1.0:
            LOGGER.warning(
                "The mesh may be too coarse for the interface: h=%.3e, curvature=%.3e",
                self.mesh.h,
                curvature,
            )

    def build(self) -> MeshClassification:
        mesh = self.mesh
        LOGGER.info("Classifying %d elements against the interface", mesh.triangle_count)
        signs = vertex_signs(self.geometry, mesh.vertices, mesh.h, self.snap)
        self._check_double_roots(signs)

        for _ in range(MAX_SNAP_PASSES):
            try:
                element_signs, cut_elements, roots = self._classify_elements(signs)
                break
            except _Degenerate as error:
                signs = self._snap_degenerate(signs, error.triangles)
        else:
            raise AssumptionAViolated(
                "Degenerate cuts remain after snapping", suggested_n=_suggested_n(mesh.n)
            )

        self._check_curvature(cut_elements)
        interface_edges = self._interface_edges(cut_elements, roots)
        LOGGER.info(
            "Found %d interface elements and %d interface edges",
            len(cut_elements),
            len(interface_edges),
        )
        return MeshClassification(
            element_signs=element_signs,
            cut_elements=cut_elements,
            interface_edges=interface_edges,
            vertex_signs=signs,
        )


class _Degenerate(Exception):
    def __init__(self, triangles: list[int]) -> None:
        super().__init__(f"{len(triangles)} degenerate cuts")
        self.triangles: list[int] = triangles


def classify_mesh(
    mesh: TriMesh, geometry: LevelSetGeometry, snap: float = SNAP_TOLERANCE
) -> MeshClassification:
    return MeshClassificationBuilder(mesh, geometry, snap).build()


def element_side_at(
    classification: MeshClassification, triangle: int, point: FloatArray
) -> Side:
    """Discrete side of a point in a triangle."""
    cut = classification.cut_elements.get(triangle)
    if cut is None:
        return classification.element_side(triangle)
    return cut.segment.side_of(point)

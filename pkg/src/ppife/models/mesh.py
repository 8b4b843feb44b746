from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ppife.dimensions import Rectangle
from ppife.errors import OutOfDomain
from ppife.helpers import FloatArray, IntArray
from ppife.models.cut import CutPolygonQuadrature, CutSegment, SubTriangle
from ppife.sides import Side



@dataclass(frozen=True)
class TriMesh:
    """A structured triangulation of a rectangle."""

    #: Domain covered by the mesh
    domain: Rectangle
    #: Number of squares per direction
    n: int
    #: Vertex coordinates, shape (n_vertices, 2)
    vertices: FloatArray
    #: Vertex indices of the triangles, counterclockwise, shape (n_triangles, 3)
    triangles: IntArray
    #: Vertex indices of the edges, sorted, shape (n_edges, 2)
    edges: IntArray
    #: Triangles adjacent to each edge, lower index first, -1 if none
    edge_triangles: IntArray
    #: Edges of each triangle, in the local order (0, 1), (1, 2), (2, 0)
    triangle_edges: IntArray
    #: Whether each vertex is on the boundary
    boundary_vertices: NDArray[np.bool_]
    #: Maximum triangle diameter
    h: float

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def triangle_points(self) -> FloatArray:
        """Vertex coordinates per triangle, shape (n_triangles, 3, 2)."""
        return self.vertices[self.triangles]

    @cached_property
    def areas(self) -> FloatArray:
        p = self.triangle_points
        return 0.5 * (
            (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
            - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1])
        )

    @cached_property
    def boundary_edges(self) -> NDArray[np.bool_]:
        return self.edge_triangles[:, 1] < 0

    @property
    def spacing(self) -> tuple[float, float]:
        return self.domain.length / self.n, self.domain.width / self.n

    def locate(self, point: ArrayLike) -> int:
        """Index of the triangle containing a point."""
        x, y = np.asarray(point, dtype=float)
        if (x, y) not in self.domain:
            raise OutOfDomain((float(x), float(y)))
        hx, hy = self.spacing
        i = min(max(int((x - self.domain.x_min) // hx), 0), self.n - 1)
        j = min(max(int((y - self.domain.y_min) // hy), 0), self.n - 1)
        xi = (x - self.domain.x_min - i * hx) / hx
        eta = (y - self.domain.y_min - j * hy) / hy
        # Squares are split along their bottom-left to top-right diagonal
        return 2 * (j * self.n + i) + (0 if eta <= xi else 1)


@dataclass(frozen=True)
class InterfaceEdge:
    """An interior edge crossed by the interface."""

    #: Index of the edge in the mesh
    index: int
    #: Endpoint coordinates, shape (2, 2)
    endpoints: FloatArray
    #: Lower index adjacent triangle
    first: int
    #: Higher index adjacent triangle
    second: int
    #: Unit normal, pointing from the first to the second triangle
    normal: FloatArray
    #: Intersection of the edge with the discrete interface
    split: FloatArray

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.endpoints[1] - self.endpoints[0]))

    @property
    def triangles(self) -> tuple[int, int]:
        return self.first, self.second


@dataclass(frozen=True)
class CutElement:
    """Cut data of one interface element."""

    #: Index of the triangle
    index: int
    #: Vertex coordinates, shape (3, 2)
    vertices: FloatArray
    #: Discrete interface inside the element
    segment: CutSegment
    #: Sub-triangulation of the two regions
    sub_triangles: tuple[SubTriangle, ...]
    _quadratures: dict[int, CutPolygonQuadrature] = field(
        default_factory=dict, init=False, compare=False, repr=False
    )

    def quadrature(self, order: int) -> CutPolygonQuadrature:
        if order not in self._quadratures:
            self._quadratures[order] = CutPolygonQuadrature.from_sub_triangles(
                self.sub_triangles, order
            )
        return self._quadratures[order]

    def area(self, side: Side) -> float:
        return sum(piece.area for piece in self.sub_triangles if piece.side is side)


@dataclass(frozen=True)
class MeshClassification:
    """Interface classification of the elements and edges of a mesh."""

    #: Sign per triangle: 1 (plus), -1 (minus), 0 (interface)
    element_signs: IntArray
    #: Cut data of interface elements, by triangle index
    cut_elements: dict[int, CutElement]
    #: Interior edges crossed by the interface
    interface_edges: tuple[InterfaceEdge, ...]
    #: Signs of the level set at the vertices, 0 when snapped onto the interface
    vertex_signs: IntArray

    @property
    def interface_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.cut_elements))

    def element_side(self, triangle: int) -> Side:
        match int(self.element_signs[triangle]):
            case 1:
                return Side.PLUS
            case -1:
                return Side.MINUS
            case _:
                return Side.INTERFACE

    def is_interface(self, triangle: int) -> bool:
        return triangle in self.cut_elements

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
import scipy.sparse
from numpy.typing import ArrayLike, NDArray

from ppife.helpers import FloatArray, IntArray
from ppife.models.ife import IfeBasis
from ppife.models.lifting import EdgeLiftings
from ppife.models.mesh import MeshClassification, TriMesh

SparseMatrix = scipy.sparse.csr_matrix


@dataclass(frozen=True)
class Discretization:
    """The mesh and the IFE space a system is built on."""

    #: Mesh
    mesh: TriMesh
    #: Classification of the mesh
    classification: MeshClassification
    #: IFE bases of the interface elements
    bases: dict[int, IfeBasis]
    #: Liftings of the shape function jumps, one entry per interface edge
    liftings: tuple[EdgeLiftings, ...] = ()


@dataclass(frozen=True)
class SystemComponents:
    """The separate bilinear forms making up the system and the mesh dependent norms."""

    #: Sum over elements of the integral of beta_h grad(u) . grad(v)
    volume: SparseMatrix
    #: Flux average times jump terms, with their sign
    consistency: SparseMatrix
    #: s_h, four times the weighted products of the liftings
    stabilization: SparseMatrix
    #: h times the products of the coefficient weighted gradient averages on edges
    edge_average: SparseMatrix
    #: Products of the jumps on edges, divided by h
    edge_jump: SparseMatrix


@dataclass(frozen=True)
class LinearSystem:
    """The assembled system, before elimination of the Dirichlet vertices."""

    #: A_h, symmetric, shape (n_vertices, n_vertices)
    matrix: SparseMatrix
    #: Load vector
    load: FloatArray
    #: Whether each vertex carries a Dirichlet value
    dirichlet_mask: NDArray[np.bool_]
    #: Dirichlet values, zero on free vertices
    dirichlet_values: FloatArray
    #: Bilinear forms the matrix is made of
    components: SystemComponents
    #: Space the system is posed on
    discretization: Discretization

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def free(self) -> IntArray:
        return np.flatnonzero(~self.dirichlet_mask)

    def reduced(self) -> tuple[SparseMatrix, FloatArray]:
        """Matrix and right-hand side on the free vertices."""
        free = self.free
        lifted = self.matrix @ self.dirichlet_values
        matrix = self.matrix[free][:, free].tocsr()
        return matrix, self.load[free] - lifted[free]

    def expand(self, free_values: ArrayLike) -> FloatArray:
        """Full coefficient vector from values on the free vertices."""
        values = self.dirichlet_values.copy()
        values[self.free] = np.asarray(free_values, dtype=float)
        return values

    def form(self, matrix: SparseMatrix, u: ArrayLike, v: ArrayLike | None = None) -> float:
        """Bilinear form of a matrix, v defaults to u."""
        u_array = np.asarray(u, dtype=float)
        v_array = u_array if v is None else np.asarray(v, dtype=float)
        return float(v_array @ (matrix @ u_array))

    def energy_norm(self, v: ArrayLike) -> float:
        """The broken coefficient weighted H1 seminorm."""
        return float(np.sqrt(max(self.form(self.components.volume, v), 0.0)))

    def triple_norm(self, v: ArrayLike) -> float:
        components = self.components
        total = sum(
            self.form(matrix, v)
            for matrix in (
                components.volume,
                components.edge_average,
                components.edge_jump,
                components.stabilization,
            )
        )
        return float(np.sqrt(max(total, 0.0)))

    def coordinate_lines(self) -> Iterator[str]:
        """The matrix as "row col value" lines."""
        coordinates = self.matrix.tocoo()
        for row, col, value in zip(coordinates.row, coordinates.col, coordinates.data):
            yield f"{row} {col} {value:.17e}"

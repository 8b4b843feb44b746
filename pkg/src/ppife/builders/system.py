"""Assembly of the parameter free partially penalized IFE system."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
import logging

import numpy as np
import scipy.sparse

from ppife.builders.lifting import edge_traces
from ppife.helpers import FloatArray, IntArray, affine_gradients_many
from ppife.models.coefficient import Coefficient
from ppife.models.ife import IfeBasis
from ppife.models.lifting import EdgeLiftings, EdgeTraces
from ppife.models.mesh import MeshClassification, TriMesh
from ppife.models.system import (
    Discretization,
    LinearSystem,
    SparseMatrix,
    SystemComponents,
)
from ppife.quadrature import triangle_rule


LOGGER = logging.getLogger(__name__)

#: Factor of the lifting stabilization, fixed by the scheme
STABILIZATION_CONSTANT = 4.0
#: Factor of the lifting stabilization of the scheme in three dimensions
STABILIZATION_CONSTANT_3D = 8.0

ScalarFunction = Callable[[FloatArray], FloatArray]


class _Triplets:
    """Coordinate entries of a sparse matrix under construction."""

    def __init__(self) -> None:
        self.rows: list[IntArray] = []
        self.cols: list[IntArray] = []
        self.values: list[FloatArray] = []

    def add(self, dofs: IntArray, local: FloatArray) -> None:
        """Adds local matrices, shape (m, k, k) or (k, k), on the given dofs."""
        blocks = local.reshape(-1, *local.shape[-2:])
        indices = dofs.reshape(len(blocks), -1)
        self.rows.append(np.repeat(indices, indices.shape[1], axis=1).ravel())
        self.cols.append(np.tile(indices, (1, indices.shape[1])).ravel())
        self.values.append(blocks.ravel())

    def to_csr(self, size: int) -> SparseMatrix:
        if not self.values:
            return scipy.sparse.csr_matrix((size, size))
        return scipy.sparse.coo_matrix(
            (
                np.concatenate(self.values),
                (np.concatenate(self.rows), np.concatenate(self.cols)),
            ),
            shape=(size, size),
        ).tocsr()


@dataclass(frozen=True)
class SystemBuilder:
    """Builds A_h(u, v) = (f, v) with Dirichlet data on the boundary vertices."""

    #: Mesh
    mesh: TriMesh
    #: Classification of the mesh
    classification: MeshClassification
    #: IFE bases of the interface elements
    bases: dict[int, IfeBasis]
    #: Liftings of the shape function jumps, one entry per interface edge
    liftings: Sequence[EdgeLiftings]
    #: Diffusion coefficient
    coefficient: Coefficient
    #: Source term
    f: ScalarFunction
    #: Dirichlet data
    g: ScalarFunction
    #: Quadrature order of the stiffness integrals
    stiffness_order: int = 2
    #: Quadrature order of the load integrals
    load_order: int = 4

    def _regular_volume(self, volume: _Triplets, load: FloatArray) -> None:
        mesh = self.mesh
        signs = self.classification.element_signs
        regular = np.flatnonzero(signs != 0)
        simplices = mesh.triangle_points[regular]
        dofs = mesh.triangles[regular]
        areas = np.abs(mesh.areas[regular])
        gradients = affine_gradients_many(simplices)

        rule = triangle_rule(self.stiffness_order)
        points, weights = rule.map_many(simplices, areas)
        plus = np.repeat(signs[regular] > 0, len(rule.weights))
        beta = self.coefficient.side_values(points.reshape(-1, 2), plus).reshape(weights.shape)
        masses = np.sum(weights * beta, axis=1)
        stiffness = gradients @ gradients.transpose(0, 2, 1)
        volume.add(dofs, masses[:, np.newaxis, np.newaxis] * stiffness)

        rule = triangle_rule(self.load_order)
        points, weights = rule.map_many(simplices, areas)
        source = np.asarray(self.f(points.reshape(-1, 2)), dtype=float).reshape(weights.shape)
        local = np.einsum("mk,ki->mi", weights * source, rule.barycentric)
        load += np.bincount(dofs.ravel(), weights=local.ravel(), minlength=len(load))

    def _interface_volume(self, volume: _Triplets, load: FloatArray) -> None:
        mesh = self.mesh
        for index, cut in sorted(self.classification.cut_elements.items()):
            basis = self.bases[index]
            dofs = mesh.triangles[index]

            quadrature = cut.quadrature(self.stiffness_order)
            beta = self.coefficient.side_values(quadrature.points, quadrature.plus_mask)
            gradients = basis.gradients(quadrature.plus_mask)
            volume.add(
                dofs,
                np.einsum("k,kid,kjd->ij", quadrature.weights * beta, gradients, gradients),
            )

            quadrature = cut.quadrature(self.load_order)
            source = np.asarray(self.f(quadrature.points), dtype=float)
            values = basis.values(quadrature.points, quadrature.plus_mask)
            np.add.at(load, dofs, values.T @ (quadrature.weights * source))

    def _edge_terms(
        self,
        traces: Sequence[EdgeTraces],
        consistency: _Triplets,
        stabilization: _Triplets,
        edge_average: _Triplets,
        edge_jump: _Triplets,
    ) -> None:
        h = self.mesh.h
        for trace, lifting in zip(traces, self.liftings, strict=True):
            assert np.array_equal(trace.dofs, lifting.dofs), "Traces and liftings disagree"
            weights = trace.rule.weights
            coupling = (trace.flux_averages * weights) @ trace.jumps.T
            consistency.add(trace.dofs, -(coupling + coupling.T))
            stabilization.add(trace.dofs, STABILIZATION_CONSTANT * lifting.gram())
            averages = trace.gradient_averages
            edge_average.add(
                trace.dofs, h * np.einsum("k,ikd,jkd->ij", weights, averages, averages)
            )
            edge_jump.add(trace.dofs, (trace.jumps * weights) @ trace.jumps.T / h)

    def build(self) -> LinearSystem:
        mesh = self.mesh
        LOGGER.info(
            "Assembling system of %d vertices, %d interface edges",
            mesh.vertex_count,
            len(self.classification.interface_edges),
        )
        size = mesh.vertex_count
        load = np.zeros(size)
        volume = _Triplets()
        self._regular_volume(volume, load)
        self._interface_volume(volume, load)

        traces = [
            edge_traces(edge, mesh.triangles, self.bases, self.coefficient)
            for edge in self.classification.interface_edges
        ]
        consistency, stabilization = _Triplets(), _Triplets()
        edge_average, edge_jump = _Triplets(), _Triplets()
        self._edge_terms(traces, consistency, stabilization, edge_average, edge_jump)

        components = SystemComponents(
            volume=volume.to_csr(size),
            consistency=consistency.to_csr(size),
            stabilization=stabilization.to_csr(size),
            edge_average=edge_average.to_csr(size),
            edge_jump=edge_jump.to_csr(size),
        )
        matrix = (components.volume + components.consistency + components.stabilization).tocsr()

        dirichlet_mask = mesh.boundary_vertices.copy()
        dirichlet_values = np.zeros(size)
        dirichlet_values[dirichlet_mask] = self.g(mesh.vertices[dirichlet_mask])
        LOGGER.debug("Matrix has %d stored entries", matrix.nnz)
        return LinearSystem(
            matrix=matrix,
            load=load,
            dirichlet_mask=dirichlet_mask,
            dirichlet_values=dirichlet_values,
            components=components,
            discretization=Discretization(
                mesh, self.classification, self.bases, tuple(self.liftings)
            ),
        )


def assemble(
    mesh: TriMesh,
    classification: MeshClassification,
    bases: dict[int, IfeBasis],
    liftings: Sequence[EdgeLiftings],
    beta: Coefficient,
    f: ScalarFunction,
    g: ScalarFunction,
    stiffness_order: int = 2,
    load_order: int = 4,
) -> LinearSystem:
    return SystemBuilder(
        mesh=mesh,
        classification=classification,
        bases=bases,
        liftings=liftings,
        coefficient=beta,
        f=f,
        g=g,
        stiffness_order=stiffness_order,
        load_order=load_order,
    ).build()

"""Local lifting of edge jumps and traces on interface edges."""

from collections.abc import Callable
from dataclasses import dataclass
import logging

import numpy as np

from ppife.builders.cut import cut_sub_triangles
from ppife.errors import NotInterfaceEdge
from ppife.helpers import FloatArray
from ppife.models.coefficient import Coefficient, ConstantCoefficient
from ppife.models.cut import CutPolygonQuadrature
from ppife.models.ife import IfeBasis
from ppife.models.lifting import EdgeLiftings, EdgeRule, EdgeTraces, LiftingField
from ppife.models.mesh import InterfaceEdge, MeshClassification, TriMesh
from ppife.quadrature import segment_rule
from ppife.sides import Side, SideValues


LOGGER = logging.getLogger(__name__)

#: Gauss points per sub-segment of an interface edge
EDGE_POINTS = 3
#: Order of the cut quadrature integrating a variable coefficient
COEFFICIENT_ORDER = 6


def _supporting_bases(
    edge: InterfaceEdge, bases: dict[int, IfeBasis]
) -> tuple[IfeBasis, IfeBasis]:
    if edge.first not in bases or edge.second not in bases:
        raise NotInterfaceEdge(edge.index)
    return bases[edge.first], bases[edge.second]


def edge_rule(edge: InterfaceEdge, first: IfeBasis) -> EdgeRule:
    """Gauss rule on the two pieces of an edge, tagged by the first element's cut line."""
    points: list[FloatArray] = []
    weights: list[FloatArray] = []
    masks: list[np.ndarray] = []
    start, end = edge.endpoints
    for a, b in ((start, edge.split), (edge.split, end)):
        if np.allclose(a, b, rtol=0.0, atol=1e-15):
            continue
        piece_points, piece_weights = segment_rule(a, b, EDGE_POINTS)
        side = first.segment.side_of(0.5 * (a + b))
        points.append(piece_points)
        weights.append(piece_weights)
        masks.append(np.full(len(piece_weights), side is Side.PLUS))
    return EdgeRule(
        points=np.concatenate(points),
        weights=np.concatenate(weights),
        plus_mask=np.concatenate(masks),
    )


def edge_traces(
    edge: InterfaceEdge,
    triangles: np.ndarray,
    bases: dict[int, IfeBasis],
    coefficient: Coefficient,
) -> EdgeTraces:
    """Jumps and flux averages of every shape function touching the edge.

    `triangles` are the global vertex indices of the mesh triangles.
    """
    first, second = _supporting_bases(edge, bases)
    rule = edge_rule(edge, first)
    local = (triangles[edge.first], triangles[edge.second])
    dofs = np.unique(np.concatenate(local))
    beta = coefficient.side_values(rule.points, rule.plus_mask)

    jumps = np.zeros((len(dofs), len(rule.weights)))
    averages = np.zeros((len(dofs), len(rule.weights), 2))
    for sign, basis, vertices in ((1.0, first, local[0]), (-1.0, second, local[1])):
        values = basis.values(rule.points, rule.plus_mask)
        gradients = basis.gradients(rule.plus_mask)
        rows = np.searchsorted(dofs, vertices)
        jumps[rows] += sign * values.T
        averages[rows] += 0.5 * beta[np.newaxis, :, np.newaxis] * gradients.transpose(1, 0, 2)
    return EdgeTraces(
        rule=rule, dofs=dofs, jumps=jumps, gradient_averages=averages, normal=edge.normal
    )


def _coefficient_integrals(
    basis: IfeBasis, coefficient: Coefficient
) -> tuple[FloatArray, SideValues]:
    """Sub-areas of an element and the integrals of the coefficient over them."""
    pieces = cut_sub_triangles(basis.vertices, basis.segment)
    areas = np.array(
        [
            sum(piece.area for piece in pieces if piece.side is Side.PLUS),
            sum(piece.area for piece in pieces if piece.side is Side.MINUS),
        ]
    )
    if coefficient.is_constant:
        beta = coefficient.beta_bars(basis.segment)
        return areas, SideValues(beta.plus * areas[0], beta.minus * areas[1])

    quadrature = CutPolygonQuadrature.from_sub_triangles(pieces, COEFFICIENT_ORDER)
    values = coefficient.side_values(quadrature.points, quadrature.plus_mask)
    weighted = quadrature.weights * values
    return areas, SideValues(
        float(np.sum(weighted[quadrature.plus_mask])),
        float(np.sum(weighted[~quadrature.plus_mask])),
    )


def lift_edge_jumps(
    edge: InterfaceEdge,
    bases: dict[int, IfeBasis],
    coefficient: Coefficient,
    rule: EdgeRule,
    jumps: FloatArray,
    beta_bars: tuple[SideValues, SideValues] | None = None,
) -> list[LiftingField]:
    """Liftings of jumps sampled at the points of an edge rule, one per row of `jumps`."""
    supporting = _supporting_bases(edge, bases)
    if beta_bars is None:
        beta_bars = (supporting[0].beta, supporting[1].beta)
    samples = np.atleast_2d(np.asarray(jumps, dtype=float))
    beta = coefficient.side_values(rule.points, rule.plus_mask)
    weighted_integrals = (samples * beta) @ rule.weights

    c = np.zeros((len(samples), 2))
    d = np.zeros((len(samples), 2))
    normals = np.zeros((2, 2))
    tangents = np.zeros((2, 2))
    areas = np.zeros((2, 2))
    weights = np.zeros((2, 2))
    tangential_mass = np.zeros(2)
    normal_mass = np.zeros(2)
    for slot, (basis, bars) in enumerate(zip(supporting, beta_bars)):
        segment = basis.segment
        areas[slot], integrals = _coefficient_integrals(basis, coefficient)
        # The normal component is weighted by the coefficient of the opposite side
        weights[slot] = (bars.minus, bars.plus)
        tangential_mass[slot] = integrals.plus + integrals.minus
        normal_mass[slot] = bars.minus**2 * integrals.plus + bars.plus**2 * integrals.minus
        edge_weights = np.where(rule.plus_mask, bars.minus, bars.plus)
        normal_integrals = (samples * beta * edge_weights) @ rule.weights

        normals[slot] = segment.normal
        tangents[slot] = segment.tangent
        c[:, slot] = (
            float(segment.tangent @ edge.normal)
            * weighted_integrals
            / (2.0 * tangential_mass[slot])
        )
        d[:, slot] = (
            float(segment.normal @ edge.normal) * normal_integrals / (2.0 * normal_mass[slot])
        )

    return [
        LiftingField(
            edge=edge.index,
            elements=edge.triangles,
            c=c[row],
            d=d[row],
            normals=normals,
            tangents=tangents,
            areas=areas,
            weights=weights,
            tangential_mass=tangential_mass,
            normal_mass=normal_mass,
        )
        for row in range(len(samples))
    ]


def lift_jump(
    edge: InterfaceEdge,
    bases: dict[int, IfeBasis],
    beta_plus: float,
    beta_minus: float,
    jump: Callable[[FloatArray], FloatArray],
) -> LiftingField:
    """Lifting of a jump function on an edge, piecewise constant coefficient."""
    first, _ = _supporting_bases(edge, bases)
    rule = edge_rule(edge, first)
    coefficient = ConstantCoefficient(SideValues(beta_plus, beta_minus))
    samples = np.asarray(jump(rule.points), dtype=float)
    return lift_edge_jumps(
        edge,
        bases,
        coefficient,
        rule,
        samples[np.newaxis, :],
        (coefficient.beta, coefficient.beta),
    )[0]


def lift_jump_variable(
    edge: InterfaceEdge,
    bases: dict[int, IfeBasis],
    beta_field: Coefficient,
    beta_bars: tuple[SideValues, SideValues] | None,
    jump: Callable[[FloatArray], FloatArray],
) -> LiftingField:
    """Lifting of a jump function on an edge, variable coefficient.

    The element constants default to the ones the bases were built with.
    """
    first, _ = _supporting_bases(edge, bases)
    rule = edge_rule(edge, first)
    samples = np.asarray(jump(rule.points), dtype=float)
    return lift_edge_jumps(edge, bases, beta_field, rule, samples[np.newaxis, :], beta_bars)[0]


@dataclass(frozen=True)
class LiftingBuilder:
    """Liftings of the shape function jumps on every interface edge."""

    #: Mesh
    mesh: TriMesh
    #: Classification of the mesh
    classification: MeshClassification
    #: IFE bases of the interface elements
    bases: dict[int, IfeBasis]
    #: Diffusion coefficient
    coefficient: Coefficient

    def build(self) -> tuple[EdgeLiftings, ...]:
        edges = self.classification.interface_edges
        LOGGER.info("Lifting jumps on %d interface edges", len(edges))
        liftings: list[EdgeLiftings] = []
        for edge in edges:
            trace = edge_traces(edge, self.mesh.triangles, self.bases, self.coefficient)
            fields = lift_edge_jumps(
                edge, self.bases, self.coefficient, trace.rule, trace.jumps
            )
            liftings.append(EdgeLiftings(edge=edge.index, dofs=trace.dofs, fields=tuple(fields)))
        return tuple(liftings)

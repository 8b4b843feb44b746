import logging
from dataclasses import replace

import numpy as np
import pytest

from ppife.builders.cut import TRIANGLE_EDGES
from ppife.builders.mesh import (
    CartesianMeshBuilder,
    build_cartesian_mesh,
    classify_mesh,
    element_side_at,
)
from ppife.dimensions import UNIT_BOX
from ppife.errors import AssumptionAViolated
from ppife.models.level_set import CircleLevelSet, LineLevelSet
from ppife.sides import Side


def test_cartesian_mesh_builder__counts() -> None:
    mesh = CartesianMeshBuilder(UNIT_BOX, 4).build()
    assert mesh.vertex_count == 25
    assert mesh.triangle_count == 32
    assert mesh.edge_count == 56
    assert int(np.count_nonzero(mesh.boundary_vertices)) == 16
    assert int(np.count_nonzero(mesh.boundary_edges)) == 16
    assert mesh.h == pytest.approx(np.sqrt(0.5))


def test_cartesian_mesh_builder__too_coarse() -> None:
    with pytest.raises(ValueError, match="at least 2 squares"):
        _ = build_cartesian_mesh(UNIT_BOX, 1)


def test_cartesian_mesh_builder__orientation() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 8)
    assert bool(np.all(mesh.areas > 0.0))


def test_cartesian_mesh_builder__edges() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    for triangle, edges in enumerate(mesh.triangle_edges):
        for local, (i, j) in enumerate(TRIANGLE_EDGES):
            expected = sorted((mesh.triangles[triangle, i], mesh.triangles[triangle, j]))
            np.testing.assert_array_equal(mesh.edges[edges[local]], expected)
            assert triangle in mesh.edge_triangles[edges[local]]
    interior = ~mesh.boundary_edges
    assert bool(np.all(mesh.edge_triangles[interior, 0] < mesh.edge_triangles[interior, 1]))


def test_classify_mesh__circle() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 16)
    classification = classify_mesh(mesh, CircleLevelSet(radius=0.5))

    assert classification.interface_elements
    assert bool(np.all(classification.element_signs[list(classification.cut_elements)] == 0))
    assert classification.element_side(mesh.locate((0.05, 0.02))) is Side.MINUS
    assert classification.element_side(mesh.locate((0.95, 0.9))) is Side.PLUS

    minus_area = float(np.sum(mesh.areas[classification.element_signs < 0])) + sum(
        cut.area(Side.MINUS) for cut in classification.cut_elements.values()
    )
    assert minus_area == pytest.approx(np.pi / 4.0, rel=0.05)
    total = float(np.sum(mesh.areas[classification.element_signs != 0])) + sum(
        cut.area(Side.PLUS) + cut.area(Side.MINUS)
        for cut in classification.cut_elements.values()
    )
    assert total == pytest.approx(4.0)


def test_cut_element__quadrature_cache() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 8)
    cut = next(iter(classify_mesh(mesh, CircleLevelSet(radius=0.5)).cut_elements.values()))
    fresh = replace(cut)

    assert cut.quadrature(2) is cut.quadrature(2)
    assert cut == fresh
    assert repr(cut) == repr(fresh)
    assert "_quadratures" not in repr(cut)


def test_classify_mesh__interface_edges() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 16)
    classification = classify_mesh(mesh, CircleLevelSet(radius=0.5))
    assert classification.interface_edges
    for edge in classification.interface_edges:
        assert edge.first < edge.second
        assert classification.is_interface(edge.first)
        assert classification.is_interface(edge.second)
        centroids = mesh.triangle_points[[edge.first, edge.second]].mean(axis=1)
        assert float(edge.normal @ (centroids[1] - centroids[0])) > 0.0
        assert float(np.linalg.norm(edge.split)) == pytest.approx(0.5, abs=1e-12)


def test_classify_mesh__curvature_warning(caplog: pytest.LogCaptureFixture) -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 2)
    with caplog.at_level(logging.WARNING, logger="ppife"):
        classification = classify_mesh(mesh, CircleLevelSet(radius=0.5))
    assert len(classification.cut_elements) == 6
    assert len(classification.interface_edges) == 6
    assert "too coarse" in caplog.text


def test_classify_mesh__snaps_slivers() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    classification = classify_mesh(mesh, LineLevelSet(point=(1e-9, 0.0), normal=(1.0, 0.0)))
    snapped = np.flatnonzero(classification.vertex_signs == 0)
    assert len(snapped) > 0
    np.testing.assert_allclose(mesh.vertices[snapped, 0], 0.0)


def test_classify_mesh__along_mesh_line() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    classification = classify_mesh(mesh, LineLevelSet(point=(0.0, 0.0), normal=(1.0, 0.0)))
    assert not classification.cut_elements
    centroids = mesh.triangle_points.mean(axis=1)
    np.testing.assert_array_equal(
        classification.element_signs, np.where(centroids[:, 0] > 0.0, 1, -1)
    )


def test_classify_mesh__two_roots_on_an_edge() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    with pytest.raises(AssumptionAViolated) as error:
        _ = classify_mesh(mesh, CircleLevelSet(radius=0.1, center=(0.25, 0.0)))
    assert error.value.suggested_n == 8


def test_element_side_at() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 16)
    classification = classify_mesh(mesh, CircleLevelSet(radius=0.5))
    index = classification.interface_elements[0]
    cut = classification.cut_elements[index]
    vertex = cut.vertices[0]
    assert element_side_at(classification, index, vertex) is cut.segment.side_of(vertex)
    regular = int(np.flatnonzero(classification.element_signs > 0)[0])
    assert element_side_at(classification, regular, mesh.triangle_points[regular, 0]) is Side.PLUS

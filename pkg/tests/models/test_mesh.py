import numpy as np
import pytest

from ppife.builders.mesh import build_cartesian_mesh
from ppife.dimensions import UNIT_BOX, Rectangle
from ppife.errors import OutOfDomain
from ppife.helpers import barycentric


def test_tri_mesh__spacing() -> None:
    mesh = build_cartesian_mesh(Rectangle(0.0, 2.0, 0.0, 1.0), 4)
    assert mesh.spacing == (0.5, 0.25)
    assert mesh.h == pytest.approx(np.hypot(0.5, 0.25))


def test_tri_mesh__areas() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    np.testing.assert_allclose(mesh.areas, 0.125)
    assert mesh.triangle_points.shape == (32, 3, 2)


@pytest.mark.parametrize(
    "point",
    [(0.1, 0.05), (0.05, 0.1), (-1.0, -1.0), (1.0, 1.0), (0.0, 0.0), (-0.3, 0.71)],
)
def test_tri_mesh__locate(point: tuple[float, float]) -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    triangle = mesh.locate(point)
    coordinates = barycentric(mesh.triangle_points[triangle], point)
    assert float(np.min(coordinates)) >= -1e-12


def test_tri_mesh__locate_out_of_domain() -> None:
    mesh = build_cartesian_mesh(UNIT_BOX, 4)
    with pytest.raises(OutOfDomain):
        _ = mesh.locate((1.5, 0.0))

import numpy as np
import pytest

from ppife.profiles.level_sets import LEVEL_SET_PROFILES


def test_level_set_profiles() -> None:
    assert set(LEVEL_SET_PROFILES) == {"circle", "flower", "line"}


@pytest.mark.parametrize("name", ["circle", "flower", "line"])
def test_level_set_profiles__interface_inside_domain(name: str) -> None:
    geometry = LEVEL_SET_PROFILES[name]
    x, y = np.meshgrid(np.linspace(-1.0, 1.0, 41), np.linspace(-1.0, 1.0, 41))
    values = geometry.value(np.column_stack([x.ravel(), y.ravel()]))
    assert np.any(values < 0.0)
    assert np.any(values > 0.0)


def test_line_profile__unit_normal() -> None:
    gradient = LEVEL_SET_PROFILES["line"].gradient([[0.3, 0.2]])[0]
    assert float(np.linalg.norm(gradient)) == pytest.approx(1.0)


def test_line_profile__boundary_crossings() -> None:
    geometry = LEVEL_SET_PROFILES["line"]
    side = np.linspace(-1.0, 1.0, 41)
    # No sign change along the left and right sides of the box
    for x in (-1.0, 1.0):
        values = geometry.value(np.column_stack([np.full_like(side, x), side]))
        assert np.all(values < 0.0) or np.all(values > 0.0)
    # The normal is tangent to the top and bottom sides where the line crosses them
    for y in (-1.0, 1.0):
        values = geometry.value(np.column_stack([side, np.full_like(side, y)]))
        assert values[0] * values[-1] < 0.0
        gradients = geometry.gradient(np.column_stack([side, np.full_like(side, y)]))
        np.testing.assert_allclose(gradients @ np.array([0.0, 1.0]), 0.0, atol=1e-14)

from collections.abc import Callable

import numpy as np
import pytest
import scipy.optimize

from ppife.models.problem import Problem
from ppife.profiles.problems import PROBLEM_PROFILES, example1, example2, linear
from ppife.sides import Side, SideValues

STEP = 1e-4

#: Directions of rays from the origin crossing the interface, and how far to look along each
RAYS: dict[str, tuple[np.ndarray, Callable[[float], float]]] = {
    "circle": (np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False), lambda _: 1.0),
    # Inner branch of the flower, before 3 r = cos(angle)
    "flower": (np.linspace(-np.pi / 3.0, np.pi / 3.0, 9), lambda angle: np.cos(angle) / 3.0),
    "line": (np.linspace(-np.pi / 3.0, np.pi / 3.0, 9), lambda _: 1.0),
}


def _interface_points(problem: Problem, rays: str) -> tuple[np.ndarray, np.ndarray]:
    """Points on the interface and its unit normals."""
    geometry = problem.geometry
    angles, reach = RAYS[rays]
    points = []
    for angle in angles:
        direction = np.array([np.cos(angle), np.sin(angle)])
        distance = scipy.optimize.brentq(
            lambda t: geometry(t * direction), 0.0, reach(angle), xtol=1e-15
        )
        points.append(distance * direction)
    gradients = geometry.gradient(np.array(points))
    return np.array(points), gradients / np.linalg.norm(gradients, axis=1)[:, np.newaxis]


def _fluxes(problem: Problem, points: np.ndarray, side: Side) -> np.ndarray:
    assert problem.exact is not None
    mask = np.full(len(points), side is Side.PLUS)
    beta = problem.coefficient.values(points, side)
    return beta[:, np.newaxis] * problem.exact.gradient(points, mask)


def _divergence(problem: Problem, points: np.ndarray, side: Side) -> np.ndarray:
    total = np.zeros(len(points))
    for axis in range(2):
        shift = np.zeros(2)
        shift[axis] = STEP
        forward = _fluxes(problem, points + shift, side)[:, axis]
        backward = _fluxes(problem, points - shift, side)[:, axis]
        total += (forward - backward) / (2.0 * STEP)
    return total


def test_problem_profiles() -> None:
    assert set(PROBLEM_PROFILES) == {"example1", "example2", "linear"}
    beta = SideValues(10.0, 1.0)
    for name, factory in PROBLEM_PROFILES.items():
        problem = factory(beta)
        assert problem.name == name
        assert problem.exact is not None


@pytest.mark.parametrize(
    "problem, rays",
    [
        (example1(SideValues(10.0, 1.0)), "circle"),
        (example1(SideValues(1.0, 1e5)), "circle"),
        (example2(), "flower"),
        (linear(SideValues(1000.0, 1.0)), "line"),
    ],
    ids=["example1-plus", "example1-minus", "example2", "linear"],
)
def test_problem__jump_conditions(problem: Problem, rays: str) -> None:
    assert problem.exact is not None
    points, normals = _interface_points(problem, rays)
    plus = problem.exact.value(points, np.ones(len(points), dtype=bool))
    minus = problem.exact.value(points, np.zeros(len(points), dtype=bool))
    np.testing.assert_allclose(plus, minus, atol=1e-10)
    plus_flux = np.sum(_fluxes(problem, points, Side.PLUS) * normals, axis=1)
    minus_flux = np.sum(_fluxes(problem, points, Side.MINUS) * normals, axis=1)
    np.testing.assert_allclose(plus_flux, minus_flux, atol=1e-8)


@pytest.mark.parametrize(
    "problem",
    [example1(SideValues(10.0, 1.0)), example2(), linear(SideValues(10.0, 1.0))],
    ids=["example1", "example2", "linear"],
)
@pytest.mark.parametrize("side", [Side.PLUS, Side.MINUS])
def test_problem__source(problem: Problem, side: Side) -> None:
    points = np.array([[0.3, -0.7], [-0.8, 0.85], [0.1, 0.2], [0.05, -0.15]])
    mask = np.full(len(points), side is Side.PLUS)
    np.testing.assert_allclose(
        problem.source(points, mask), -_divergence(problem, points, side), rtol=1e-4, atol=1e-6
    )


def test_example1__values() -> None:
    problem = example1(SideValues(10.0, 1.0))
    # Inside the circle u = r^3, outside u = r^3 / 10 + 0.9 / 8
    assert problem.u([[0.3, 0.4]])[0] == pytest.approx(0.125)
    assert problem.u([[0.6, 0.8]])[0] == pytest.approx(0.1 + 0.1125)
    assert problem.f([[0.3, 0.4]])[0] == pytest.approx(-4.5)
    assert problem.g([[1.0, 0.0]])[0] == pytest.approx(0.1 + 0.1125)


def test_example2__geometry() -> None:
    problem = example2()
    assert problem.geometry([1.0, 1.0]) == pytest.approx(23.02)
    assert problem.geometry([0.0, 0.0]) == pytest.approx(0.02)
    # The curve passes between the origin and (0.3, 0), a non-convex dent
    assert problem.geometry([0.3, 0.0]) < 0.0
    assert not problem.coefficient.is_constant


def test_linear__values() -> None:
    problem = linear(SideValues(4.0, 2.0))
    points = np.array([[0.5, 0.6], [0.0, -0.4]])
    np.testing.assert_allclose(problem.u(points), [0.4 / 4.0, -0.1 / 2.0])
    np.testing.assert_array_equal(problem.f(points), 0.0)

import numpy as np
import pytest

from ppife.models.problem import Problem
from ppife.profiles.problems import example1
from ppife.sides import SideValues


def test_problem__sides() -> None:
    problem = example1(SideValues(10.0, 1.0))
    np.testing.assert_array_equal(
        problem.true_plus_mask([[0.0, 0.0], [0.9, 0.0], [0.5, 0.0]]), [False, True, True]
    )


def test_problem__dirichlet_defaults_to_exact() -> None:
    problem = example1(SideValues(10.0, 1.0))
    points = np.array([[1.0, 1.0], [-1.0, 0.0]])
    np.testing.assert_allclose(problem.g(points), problem.u(points))


def test_problem__dirichlet() -> None:
    problem = example1(SideValues(10.0, 1.0))
    custom = Problem(
        name="custom",
        geometry=problem.geometry,
        coefficient=problem.coefficient,
        source=problem.source,
        dirichlet=lambda points: np.zeros(len(points)),
    )
    np.testing.assert_allclose(custom.g([[1.0, 1.0]]), [0.0])
    with pytest.raises(ValueError, match="no exact solution"):
        _ = custom.u([[1.0, 1.0]])


def test_problem__source() -> None:
    problem = example1(SideValues(10.0, 1.0))
    np.testing.assert_allclose(problem.f([[0.3, 0.4]]), [-4.5])

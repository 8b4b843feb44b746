import numpy as np
import pytest

from ppife.builders.level import LevelBuilder
from ppife.errors import AssumptionAViolated
from ppife.parameters.quadrature import QuadratureParameters
from ppife.profiles.problems import example1, example2
from ppife.sides import SideValues


def test_level_builder__discretize() -> None:
    discretization = LevelBuilder(example1(SideValues(10.0, 1.0)), 16).discretize()
    classification = discretization.classification
    assert discretization.mesh.n == 16
    assert set(discretization.bases) == set(classification.cut_elements)
    assert len(discretization.liftings) == len(classification.interface_edges)
    assert len(classification.cut_elements) > 0


@pytest.mark.parametrize("n", [8, 16])
def test_level_builder__build(n: int) -> None:
    system = LevelBuilder(example2(), n).build()
    assert system.size == (n + 1) ** 2
    assert system.discretization.mesh.n == n
    assert system.load.shape == (system.size,)


def test_level_builder__stiffness_order() -> None:
    # Gradients and coefficients are constant on each piece
    problem = example1(SideValues(10.0, 1.0))
    low = LevelBuilder(problem, 8, QuadratureParameters(stiffness_order=1)).build()
    high = LevelBuilder(problem, 8, QuadratureParameters(stiffness_order=4)).build()
    difference = (low.matrix - high.matrix).toarray()
    scale = float(np.max(np.abs(high.matrix.toarray())))
    assert float(np.max(np.abs(difference))) <= 1e-12 * scale


def test_level_builder__too_coarse() -> None:
    # The flower interface crosses some edges twice at N=2
    with pytest.raises(AssumptionAViolated):
        _ = LevelBuilder(example2(), 2).build()

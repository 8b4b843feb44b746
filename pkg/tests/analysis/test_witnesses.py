import numpy as np
import pytest

from ppife.analysis.properties import tetrahedron_family
from ppife.analysis.witnesses import (
    ScalingWitnesses,
    face_jump_ratio,
    largest_ratio,
    scaling_witnesses,
    tetrahedron_witnesses,
)
from ppife.builders.level import LevelBuilder
from ppife.models.level_set import SphereLevelSet
from ppife.profiles.problems import example1
from ppife.sides import SideValues


def _witnesses(n: int) -> ScalingWitnesses:
    problem = example1(SideValues(10.0, 1.0))
    discretization = LevelBuilder(problem, n).discretize()
    return scaling_witnesses(
        discretization.mesh,
        discretization.classification,
        discretization.bases,
        discretization.liftings,
        problem.coefficient,
    )


def test_largest_ratio() -> None:
    assert largest_ratio(np.diag([2.0, 3.0]), np.eye(2)) == pytest.approx(3.0)
    assert largest_ratio(np.diag([2.0, 3.0]), np.diag([1.0, 4.0])) == pytest.approx(2.0)


def test_largest_ratio__kernel() -> None:
    # Directions in the kernel of the denominator are left out
    assert largest_ratio(np.diag([2.0, 5.0]), np.diag([1.0, 0.0])) == pytest.approx(2.0)
    assert largest_ratio(np.eye(2), np.zeros((2, 2))) == 0.0


def test_scaling_witnesses() -> None:
    coarse, fine = _witnesses(8), _witnesses(16)
    assert (coarse.n, fine.n) == (8, 16)
    assert fine.h == pytest.approx(coarse.h / 2.0)
    for witness in (coarse, fine):
        values = [witness.upsilon, witness.psi, witness.lifting, witness.jump]
        assert all(np.isfinite(value) and value > 0.0 for value in values)
    # Scale invariant: no growth like a power of 1/h
    assert fine.upsilon < 8.0 * coarse.upsilon
    assert fine.psi < 8.0 * coarse.psi
    assert fine.lifting < 8.0 * coarse.lifting
    assert fine.jump < 8.0 * coarse.jump


def test_tetrahedron_witnesses() -> None:
    geometry = SphereLevelSet()
    witnesses = [
        tetrahedron_witnesses(first, geometry, SideValues(10.0, 1.0))
        for first, _ in tetrahedron_family(levels=2)
    ]
    assert witnesses[1].h == pytest.approx(witnesses[0].h / 2.0)
    for witness in witnesses:
        values = [witness.psi, witness.upsilon, witness.theta, witness.mismatch]
        assert all(np.isfinite(value) and value >= 0.0 for value in values)
        assert witness.psi > 0.0


def test_face_jump_ratio() -> None:
    geometry = SphereLevelSet()
    first, second = tetrahedron_family(levels=1)[0]
    ratio = face_jump_ratio(first, second, geometry, SideValues(10.0, 1.0))
    assert np.isfinite(ratio)
    assert ratio > 0.0


def test_face_jump_ratio__no_shared_face() -> None:
    first, _ = tetrahedron_family(levels=1)[0]
    with pytest.raises(ValueError, match="share"):
        _ = face_jump_ratio(first, first + 1.0, SphereLevelSet(), SideValues(10.0, 1.0))

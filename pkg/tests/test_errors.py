from ppife.errors import (
    AssumptionAViolated,
    NoBracket,
    NotConverged,
    OutOfDomain,
    PpifeError,
    SingularBasis,
)


def test_assumption_violated__str() -> None:
    assert str(AssumptionAViolated("Two roots")) == "Two roots"
    assert (
        str(AssumptionAViolated("Two roots", element=12, suggested_n=32))
        == "Element 12: Two roots (refine the mesh, try N >= 32)"
    )


def test_no_bracket() -> None:
    error = NoBracket(1.0, 2.0)
    assert isinstance(error, PpifeError)
    assert isinstance(error, ValueError)
    assert "phi(a)=1.000e+00" in str(error)


def test_singular_basis() -> None:
    assert SingularBasis(1e-15).denominator == 1e-15


def test_not_converged() -> None:
    error = NotConverged(100, 1e-3)
    assert error.iterations == 100
    assert "after 100 iterations" in str(error)


def test_out_of_domain() -> None:
    assert OutOfDomain((2.0, 0.0)).point == (2.0, 0.0)

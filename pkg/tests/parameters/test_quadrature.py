from argparse import ArgumentParser

import pytest

from ppife.parameters.quadrature import QuadratureParameters


def test_quadrature_parameters__default() -> None:
    parameters = QuadratureParameters()
    assert (parameters.stiffness_order, parameters.load_order, parameters.error_order) == (2, 4, 6)


@pytest.mark.parametrize("name", ["stiffness_order", "load_order", "error_order"])
def test_quadrature_parameters__unsupported(name: str) -> None:
    with pytest.raises(ValueError, match="Unsupported"):
        _ = QuadratureParameters(**{name: 3})


def test_quadrature_parameters__cli() -> None:
    parser = ArgumentParser()
    QuadratureParameters.add_cli_arguments(parser)
    assert QuadratureParameters.from_cli_arguments(parser.parse_args([])) == QuadratureParameters()
    parameters = QuadratureParameters.from_cli_arguments(
        parser.parse_args(["--stiffness-order", "1", "--error-order", "4"])
    )
    assert parameters == QuadratureParameters(stiffness_order=1, error_order=4)
    with pytest.raises(SystemExit):
        _ = parser.parse_args(["--load-order", "5"])

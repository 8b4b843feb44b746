from argparse import ArgumentParser

import pytest

from ppife.parameters.verification import VerificationParameters


def test_verification_parameters__default() -> None:
    parameters = VerificationParameters()
    assert not parameters.enabled
    assert parameters.samples == 1000
    assert parameters.seed == 0
    assert parameters.n_ladder == (8, 16, 32, 64)


@pytest.mark.parametrize("samples", [0, -3])
def test_verification_parameters__invalid(samples: int) -> None:
    with pytest.raises(ValueError, match="sample"):
        _ = VerificationParameters(samples=samples)


def test_verification_parameters__cli() -> None:
    parser = ArgumentParser()
    VerificationParameters.add_cli_arguments(parser)
    assert (
        VerificationParameters.from_cli_arguments(parser.parse_args([]))
        == VerificationParameters()
    )
    parameters = VerificationParameters.from_cli_arguments(
        parser.parse_args(
            ["--verify", "--samples", "50", "--seed", "42", "--verify-ladder", "8,16"]
        )
    )
    assert parameters == VerificationParameters(
        enabled=True, samples=50, seed=42, n_ladder=(8, 16)
    )

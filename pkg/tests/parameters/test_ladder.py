from argparse import ArgumentParser
import logging

import pytest

from ppife.parameters.ladder import LadderParameters, parse_n_ladder


@pytest.mark.parametrize(
    "text, expected",
    [
        ("8,16,32", (8, 16, 32)),
        ("8, 16 ,32", (8, 16, 32)),
        ("64", (64,)),
        ("8,16,", (8, 16)),
    ],
)
def test_parse_n_ladder(text: str, expected: tuple[int, ...]) -> None:
    assert parse_n_ladder(text) == expected


def test_parse_n_ladder__invalid() -> None:
    with pytest.raises(ValueError):
        _ = parse_n_ladder("8,sixteen")


def test_ladder_parameters__default() -> None:
    assert LadderParameters().n_ladder == (8, 16, 32, 64, 128, 256)


@pytest.mark.parametrize(
    "n_ladder, message",
    [
        ((), "empty"),
        ((8, 12), "power of 2"),
        ((1, 2), "power of 2"),
        ((16, 8), "increasing"),
        ((8, 8), "increasing"),
        ((512, 1024), "allow-fine"),
    ],
)
def test_ladder_parameters__invalid(n_ladder: tuple[int, ...], message: str) -> None:
    with pytest.raises(ValueError, match=message):
        _ = LadderParameters(n_ladder=n_ladder)


def test_ladder_parameters__allow_fine(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.WARNING):
        parameters = LadderParameters(n_ladder=(512, 1024), allow_fine=True)
    assert parameters.n_ladder[-1] == 1024
    assert "N=1024" in caplog.text


def test_ladder_parameters__cli() -> None:
    parser = ArgumentParser()
    LadderParameters.add_cli_arguments(parser)
    assert LadderParameters.from_cli_arguments(parser.parse_args([])) == LadderParameters()
    parameters = LadderParameters.from_cli_arguments(
        parser.parse_args(["--n-ladder", "16,32", "--allow-fine"])
    )
    assert parameters == LadderParameters(n_ladder=(16, 32), allow_fine=True)

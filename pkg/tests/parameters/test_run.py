from argparse import ArgumentParser
from pathlib import Path

from ppife.exporter import Exporter
from ppife.parameters.ladder import LadderParameters
from ppife.parameters.problem import ProblemParameters
from ppife.parameters.run import RunConfig
from ppife.sides import SideValues


def test_run_config__cli() -> None:
    parser = ArgumentParser()
    RunConfig.add_cli_arguments(parser)
    config = RunConfig.from_cli_arguments(
        parser.parse_args(
            [
                "--beta-plus",
                "1",
                "--beta-minus",
                "10",
                "--n-ladder",
                "8,16",
                "--out",
                "results",
                "--build-name",
                "case2",
                "--no-export",
            ]
        )
    )
    assert config.problem == ProblemParameters(beta=SideValues(1.0, 10.0))
    assert config.ladder == LadderParameters(n_ladder=(8, 16))
    assert config.exporter == Exporter(
        directory=Path("results"), name="case2", enable_export=False
    )
    assert not config.verification.enabled

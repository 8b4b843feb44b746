from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
from typing import Self

from ppife.parameters.ladder import parse_n_ladder


@dataclass(frozen=True)
class VerificationParameters:
    """Randomized property suites."""

    #: Run the suites
    enabled: bool = False
    #: Random draws per suite
    samples: int = 1000
    #: Seed of the random draws
    seed: int = 0
    #: Meshes the suites run on
    n_ladder: tuple[int, ...] = (8, 16, 32, 64)

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"At least one sample is needed, got {self.samples}")

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Verification")
        _ = group.add_argument(
            "--verify",
            action="store_true",
            default=False,
            help="Run the property suites and write their report",
        )
        _ = group.add_argument(
            "--samples",
            metavar="N",
            type=int,
            default=1000,
            help="Random draws per property suite (default: %(default)s)",
        )
        _ = group.add_argument(
            "--seed",
            metavar="N",
            type=int,
            default=0,
            help="Seed of the random draws (default: %(default)s)",
        )
        _ = group.add_argument(
            "--verify-ladder",
            metavar="N1,N2,...",
            type=parse_n_ladder,
            default="8,16,32,64",
            help="Meshes the property suites run on (default: %(default)s)",
        )

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            enabled=namespace.verify,  # pyright: ignore[reportAny]
            samples=namespace.samples,  # pyright: ignore[reportAny]
            seed=namespace.seed,  # pyright: ignore[reportAny]
            n_ladder=namespace.verify_ladder,  # pyright: ignore[reportAny]
        )

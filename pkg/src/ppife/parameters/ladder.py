from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
import logging
from typing import Self


LOGGER = logging.getLogger(__name__)

#: Meshes this fine are only built on request
FINE_N = 1024


def parse_n_ladder(text: str) -> tuple[int, ...]:
    """Parses a refinement ladder.

    The string should be in the format of `N1,N2,...`, e.g. `8,16,32`.
    """
    return tuple(int(n) for n in text.split(",") if n.strip())


@dataclass(frozen=True)
class LadderParameters:
    """Meshes of a convergence study."""

    #: Squares per direction, increasing powers of 2
    n_ladder: tuple[int, ...] = (8, 16, 32, 64, 128, 256)
    #: Allow meshes of FINE_N squares per direction or more
    allow_fine: bool = False

    def __post_init__(self) -> None:
        if not self.n_ladder:
            raise ValueError("The N ladder is empty")
        for n in self.n_ladder:
            if n < 2 or n & (n - 1):
                raise ValueError(f"N must be a power of 2 not below 2, got {n}")
        if any(coarse >= fine for coarse, fine in zip(self.n_ladder, self.n_ladder[1:])):
            raise ValueError(f"The N ladder must be increasing, got {self.n_ladder}")
        if self.n_ladder[-1] >= FINE_N:
            if not self.allow_fine:
                raise ValueError(
                    f"N={self.n_ladder[-1]} needs --allow-fine, meshes this fine are slow"
                )
            LOGGER.warning("N=%d requested, expect long run times", self.n_ladder[-1])

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Refinement ladder")
        _ = group.add_argument(
            "--n-ladder",
            metavar="N1,N2,...",
            type=parse_n_ladder,
            default="8,16,32,64,128,256",
            help="Squares per direction of the successive meshes (default: %(default)s)",
        )
        _ = group.add_argument(
            "--allow-fine",
            action="store_true",
            default=False,
            help=f"Allow meshes of {FINE_N} squares per direction or more",
        )

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            n_ladder=namespace.n_ladder,  # pyright: ignore[reportAny]
            allow_fine=namespace.allow_fine,  # pyright: ignore[reportAny]
        )

from argparse import ArgumentParser, Namespace
from dataclasses import dataclass
from typing import Self


#: Orders of the available triangle rules
TRIANGLE_ORDERS = (1, 2, 4, 6)


@dataclass(frozen=True)
class QuadratureParameters:
    #: Order of the stiffness integrals, exact from 2 on
    stiffness_order: int = 2
    #: Order of the load integrals
    load_order: int = 4
    #: Order of the error integrals
    error_order: int = 6

    def __post_init__(self) -> None:
        for name in ("stiffness_order", "load_order", "error_order"):
            order: int = getattr(self, name)  # pyright: ignore[reportAny]
            if order not in TRIANGLE_ORDERS:
                raise ValueError(
                    f"Unsupported {name.replace('_', ' ')}: {order} (available: {TRIANGLE_ORDERS})"
                )

    @classmethod
    def add_cli_arguments(cls, parser: ArgumentParser) -> None:
        group = parser.add_argument_group(title="Quadrature")
        _ = group.add_argument(
            "--stiffness-order",
            metavar="K",
            type=int,
            choices=TRIANGLE_ORDERS,
            default=2,
            help="Quadrature order of the stiffness integrals (default: %(default)s)",
        )
        _ = group.add_argument(
            "--load-order",
            metavar="K",
            type=int,
            choices=TRIANGLE_ORDERS,
            default=4,
            help="Quadrature order of the load integrals (default: %(default)s)",
        )
        _ = group.add_argument(
            "--error-order",
            metavar="K",
            type=int,
            choices=TRIANGLE_ORDERS,
            default=6,
            help="Quadrature order of the error integrals (default: %(default)s)",
        )

    @classmethod
    def from_cli_arguments(cls, namespace: Namespace) -> Self:
        return cls(
            stiffness_order=namespace.stiffness_order,  # pyright: ignore[reportAny]
            load_order=namespace.load_order,  # pyright: ignore[reportAny]
            error_order=namespace.error_order,  # pyright: ignore[reportAny]
        )

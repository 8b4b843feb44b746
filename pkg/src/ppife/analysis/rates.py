"""Convergence rates over a refinement ladder."""

from collections.abc import Sequence
import csv
from dataclasses import dataclass
import io
import math
from typing import override

import numpy as np

from ppife.analysis.errors import ErrorReport, interpolation_errors
from ppife.builders.level import LevelBuilder
from ppife.errors import InsufficientData
from ppife.models.problem import Problem
from ppife.parameters.quadrature import QuadratureParameters

#: Levels used by the least squares slope
SLOPE_LEVELS = 3

CSV_HEADER = ("N", "h", "l2_error", "l2_rate", "h1_error", "h1_rate")


@dataclass(frozen=True)
class RateRow:
    n: int
    h: float
    l2_error: float
    #: log2 of the error ratio with the previous row, None on the first row
    l2_rate: float | None
    h1_error: float
    h1_rate: float | None


@dataclass(frozen=True)
class RateTable:
    """Errors and convergence rates, one row per mesh."""

    rows: tuple[RateRow, ...]
    #: Least squares slope of log(error) against log(h) over the finest levels
    l2_slope: float
    h1_slope: float

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow(
                (
                    row.n,
                    f"{row.h:.3e}",
                    f"{row.l2_error:.3e}",
                    "" if row.l2_rate is None else f"{row.l2_rate:.2f}",
                    f"{row.h1_error:.3e}",
                    "" if row.h1_rate is None else f"{row.h1_rate:.2f}",
                )
            )
        return buffer.getvalue()

    @override
    def __str__(self) -> str:
        lines = [f"{'N':>6} {'L2 error':>10} {'rate':>6} {'H1 error':>10} {'rate':>6}"]
        for row in self.rows:
            l2_rate = "" if row.l2_rate is None else f"{row.l2_rate:.2f}"
            h1_rate = "" if row.h1_rate is None else f"{row.h1_rate:.2f}"
            lines.append(
                f"{row.n:>6} {row.l2_error:>10.3e} {l2_rate:>6} {row.h1_error:>10.3e} {h1_rate:>6}"
            )
        return "\n".join(lines)


def _rate(previous: float, current: float) -> float:
    if previous <= 0.0 or current <= 0.0:
        return math.nan
    return math.log2(previous / current)


def _slope(h: Sequence[float], errors: Sequence[float]) -> float:
    h_tail = np.asarray(h[-SLOPE_LEVELS:], dtype=float)
    errors_tail = np.asarray(errors[-SLOPE_LEVELS:], dtype=float)
    if np.any(errors_tail <= 0.0):
        return math.nan
    return float(np.polyfit(np.log2(h_tail), np.log2(errors_tail), 1)[0])


def fit_rates(reports: Sequence[ErrorReport]) -> RateTable:
    """Pairwise rates and the least squares slope over the last levels."""
    if len(reports) < 2:
        raise InsufficientData(f"At least 2 refinement levels are needed, got {len(reports)}")
    for coarse, fine in zip(reports, reports[1:]):
        if not math.isclose(coarse.h, 2.0 * fine.h, rel_tol=1e-9):
            raise ValueError(f"Mesh sizes must halve between levels: {coarse.h}, {fine.h}")

    rows = [
        RateRow(
            n=report.n,
            h=report.h,
            l2_error=report.l2_error,
            l2_rate=None if previous is None else _rate(previous.l2_error, report.l2_error),
            h1_error=report.h1_error,
            h1_rate=None if previous is None else _rate(previous.h1_error, report.h1_error),
        )
        for previous, report in zip([None, *reports[:-1]], reports)
    ]
    h = [report.h for report in reports]
    return RateTable(
        rows=tuple(rows),
        l2_slope=_slope(h, [report.l2_error for report in reports]),
        h1_slope=_slope(h, [report.h1_error for report in reports]),
    )


def interpolation_rates(
    problem: Problem,
    n_ladder: Sequence[int],
    quadrature: QuadratureParameters = QuadratureParameters(),
) -> RateTable:
    """Rates of the IFE interpolation errors of the exact solution, without any solve."""
    reports = [
        interpolation_errors(
            LevelBuilder(problem, n, quadrature).discretize(), problem, quadrature.error_order
        )
        for n in n_ladder
    ]
    return fit_rates(reports)

"""Closed-form asymptotic rate bounds and the bound table.

Rates are base-q: ``log_q |C| / n``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction


def _check_q(q: int) -> None:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")


def rate_bound_sep2(q: int) -> Fraction:
    """Upper bound ``(2q - 1) / (3q - 1)`` on the rate of q-ary 2-bar-separable codes."""
    _check_q(q)
    return Fraction(2 * q - 1, 3 * q - 1)


def rate_bound_b2(q: int) -> float:
    """Upper bound ``(q + (q-1) log_q 2) / (2q + (q-1) log_q 2)`` on the rate of q-ary B2 codes."""
    _check_q(q)
    lq2 = 1.0 / math.log2(q)
    return (q + (q - 1) * lq2) / (2 * q + (q - 1) * lq2)


REFERENCE_KINDS = ("frameproof", "separable_general", "dyachkov")


def rate_bound_reference(kind: str, t: int) -> Fraction:
    """Known reference bounds: ``1/t`` (t-frameproof), ``1/(t-1)`` (t-bar-separable),
    ``2/t`` (separable with the k = m = t-only definition)."""
    if kind == "frameproof":
        if t < 1:
            raise ValueError(f"frameproof bound needs t >= 1, got {t}")
        return Fraction(1, t)
    if kind == "separable_general":
        if t < 2:
            raise ValueError(f"separable bound needs t >= 2, got {t}")
        return Fraction(1, t - 1)
    if kind == "dyachkov":
        if t < 2:
            raise ValueError(f"bound needs t >= 2, got {t}")
        return Fraction(2, t)
    raise ValueError(f"unknown reference bound {kind!r}; expected one of {REFERENCE_KINDS}")


TABLE_COLUMNS = ("q", "rate_sep2", "rate_b2", "separable_general_t2", "dyachkov_t2")


@dataclass(frozen=True)
class BoundRow:
    q: int
    rate_sep2: float
    rate_b2: float
    separable_general_t2: float
    dyachkov_t2: float

    def cells(self) -> list[str]:
        return [str(self.q)] + [
            _fmt(v) for v in (self.rate_sep2, self.rate_b2, self.separable_general_t2, self.dyachkov_t2)
        ]


def _fmt(x: float) -> str:
    # 12 significant digits, '.' separator regardless of locale
    return format(float(x), ".12g")


def bound_rows(q_min: int, q_max: int) -> list[BoundRow]:
    if not isinstance(q_min, int) or not isinstance(q_max, int) or not 2 <= q_min <= q_max:
        raise ValueError(f"need 2 <= q_min <= q_max, got q_min={q_min!r}, q_max={q_max!r}")
    sep_t2 = float(rate_bound_reference("separable_general", 2))
    dy_t2 = float(rate_bound_reference("dyachkov", 2))
    return [BoundRow(q, float(rate_bound_sep2(q)), rate_bound_b2(q), sep_t2, dy_t2) for q in range(q_min, q_max + 1)]


def emit_bound_table(q_min: int, q_max: int, header: bool = True) -> str:
    """CSV text (LF line endings), one row per q."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(TABLE_COLUMNS)
    for row in bound_rows(q_min, q_max):
        writer.writerow(row.cells())
    return buf.getvalue()

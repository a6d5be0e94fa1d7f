"""Elementary-operation accounting for the cost comparison.

The point probed here: the rule engine multiplies without any times-table
lookups, using a bounded mix of additions, doublings, halvings, complements
and odd checks, each linear in the number of digits.  The schoolbook
baseline pays one table lookup per digit instead.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .digits import DigitString
from .rules import (
    COMPLEMENT_BASES,
    DOUBLING_BASES,
    HALVING_BASES,
    RULES,
    check_multiplier,
)
from .trace import ComputationTrace

__all__ = ["TRACHTENBERG", "SCHOOLBOOK", "OpCountReport", "count_trace_ops",
           "count_schoolbook_ops", "reports_as_table", "reports_as_csv"]

TRACHTENBERG = "trachtenberg"
SCHOOLBOOK = "schoolbook"


@dataclass(slots=True)
class OpCountReport:
    method: str
    multiplicand_length: int
    multiplier: int
    additions: int = 0
    doublings: int = 0
    halvings: int = 0
    complements: int = 0
    odd_checks: int = 0
    table_lookups: int = 0


def count_trace_ops(t: ComputationTrace) -> OpCountReport:
    """Tally the primitives of every step's formula.

    Each +n / +half / +odd-bonus term is one addition, as is absorbing a
    nonzero incoming carry (adding zero is free).  Doublings, halvings,
    complements (from 9 or 10) and odd checks are counted from the formula
    structure, so the counts are exact for a given trace.
    """
    spec = RULES[t.multiplier]
    report = OpCountReport(TRACHTENBERG, len(t.multiplicand), t.multiplier)
    for step in t.steps:
        f = spec.formula_for(step.role)
        report.additions += (
            int(f.plus_neighbour) + int(f.plus_half) + int(f.plus_bonus)
            + int(step.carry_in > 0)
        )
        report.doublings += int(f.base in DOUBLING_BASES)
        report.halvings += int(f.plus_half) + int(f.base in HALVING_BASES)
        report.complements += int(f.base in COMPLEMENT_BASES)
        report.odd_checks += int(f.plus_bonus)
    return report


def _count_table_pass(digits: tuple[int, ...], m: int, report: OpCountReport) -> list[int]:
    """Count one schoolbook pass (single-digit m); returns digits least
    significant first."""
    out: list[int] = []
    carry = 0
    for d in reversed(digits):
        p = m * d
        report.table_lookups += 1
        if carry:
            report.additions += 1
            p += carry
        out.append(p % 10)
        carry = p // 10
    while carry:
        out.append(carry % 10)
        carry //= 10
    return out


def count_schoolbook_ops(a: DigitString, m: int) -> OpCountReport:
    """Simulate the reference algorithm and count its work.

    Single-digit multipliers: one table lookup per digit plus one addition
    per absorbed carry.  x11/x12 run the x1/x2 pass and then add the
    ten-shifted multiplicand column by column: one addition per column
    where both numbers contribute (the shifted units column is a structural
    zero and costs nothing), plus one per absorbed carry.
    """
    check_multiplier(m)
    report = OpCountReport(SCHOOLBOOK, len(a), m)
    if m <= 9:
        _count_table_pass(a.digits, m, report)
        return report

    partial = _count_table_pass(a.digits, m - 10, report)
    shifted = [0] + list(reversed(a.digits))
    carry = 0
    for i in range(max(len(partial), len(shifted))):
        s = carry
        if carry:
            report.additions += 1
        if i < len(partial):
            s += partial[i]
        if i < len(shifted):
            s += shifted[i]
        if 0 < i < min(len(partial), len(shifted)):
            report.additions += 1
        carry = s // 10
    return report


_COLUMNS = [f.name for f in fields(OpCountReport)]


def reports_as_table(reports: list[OpCountReport]) -> str:
    """Aligned text rendering, one report per row."""
    rows = [_COLUMNS] + [
        [str(getattr(r, name)) for name in _COLUMNS] for r in reports
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(_COLUMNS))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
             for row in rows]
    return "\n".join(lines) + "\n"


def reports_as_csv(reports: list[OpCountReport]) -> str:
    """Comma-separated rendering with a header row, columns in field order."""
    lines = [",".join(_COLUMNS)]
    for r in reports:
        lines.append(",".join(str(getattr(r, name)) for name in _COLUMNS))
    return "\n".join(lines) + "\n"

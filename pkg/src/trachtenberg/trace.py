"""Worked-computation traces: the per-position record and its renderers.

A trace mirrors the classic worked table for a problem: the multiplicand
row, the raw formula row with parenthesized carries, the carry-resolution
row, and the final digit row.  `render_table` prints that table;
`to_structured` emits the machine-readable form the HTTP API serves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

from .digits import DigitString, parse

if TYPE_CHECKING:
    from .rules import PositionRole

__all__ = ["TraceStep", "ComputationTrace", "render_table", "to_structured", "from_structured"]


@dataclass(slots=True)
class TraceStep:
    """One position's computation, in evaluation (right-to-left) order.

    position_index 0 is the rightmost digit; the highest index is the
    prepended zero.  Always: sum == raw_value + carry_in >= 0,
    result_digit == sum mod 10, carry_out == sum div 10.
    """

    position_index: int
    role: "PositionRole"
    digit: int
    neighbour: int
    raw_value: int
    carry_in: int
    sum: int
    result_digit: int
    carry_out: int
    formula: str


@dataclass(slots=True)
class ComputationTrace:
    """A whole worked problem: steps in evaluation order plus the product.

    `extra_leading_digit` is the carry surviving past the leading position
    (only x11/x12 can produce one); it becomes the product's first digit.
    """

    multiplicand: DigitString
    multiplier: int
    steps: list[TraceStep]
    extra_leading_digit: int | None
    product: DigitString


def _carry_cell(step: TraceStep) -> str:
    """Second-row cell: the raw value's units digit plus the incoming carry."""
    units = step.raw_value % 10 if step.raw_value >= 0 else step.raw_value
    if step.carry_in > 0:
        return f"{units}+({step.carry_in})"
    return str(units)


def render_table(t: ComputationTrace) -> str:
    """Render the four-row worked table, most significant position on the left.

    Output is deterministic for a given trace, so it can be pinned in
    golden files.
    """
    columns: list[list[str]] = []
    if t.extra_leading_digit is not None:
        columns.append(["", "", f"({t.extra_leading_digit})", str(t.extra_leading_digit)])
    for step in reversed(t.steps):
        head = "" if step.role.value == "leading" else str(step.digit)
        columns.append([head, step.formula, _carry_cell(step), str(step.result_digit)])

    widths = [max(len(cell) for cell in col) for col in columns]
    lines = [f"{t.multiplicand} × {t.multiplier} = {t.product}"]
    for row in range(4):
        cells = (columns[i][row].ljust(widths[i]) for i in range(len(columns)))
        lines.append(" | ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def to_structured(t: ComputationTrace) -> dict[str, Any]:
    """Plain-value form of a trace (the HTTP trace schema); lossless."""
    return {
        "multiplicand": str(t.multiplicand),
        "multiplier": t.multiplier,
        "steps": [
            {
                "position_index": s.position_index,
                "role": s.role.value,
                "digit": s.digit,
                "neighbour": s.neighbour,
                "raw_value": s.raw_value,
                "carry_in": s.carry_in,
                "sum": s.sum,
                "result_digit": s.result_digit,
                "carry_out": s.carry_out,
                "formula": s.formula,
            }
            for s in t.steps
        ],
        "extra_leading_digit": t.extra_leading_digit,
        "product": str(t.product),
    }


def from_structured(doc: dict[str, Any]) -> ComputationTrace:
    """Rebuild a trace from its structured form (inverse of to_structured)."""
    from .rules import PositionRole

    steps = [
        TraceStep(
            position_index=s["position_index"],
            role=PositionRole(s["role"]),
            digit=s["digit"],
            neighbour=s["neighbour"],
            raw_value=s["raw_value"],
            carry_in=s["carry_in"],
            sum=s["sum"],
            result_digit=s["result_digit"],
            carry_out=s["carry_out"],
            formula=s["formula"],
        )
        for s in doc["steps"]
    ]
    return ComputationTrace(
        multiplicand=parse(doc["multiplicand"]),
        multiplier=doc["multiplier"],
        steps=steps,
        extra_leading_digit=doc["extra_leading_digit"],
        product=parse(doc["product"]),
    )

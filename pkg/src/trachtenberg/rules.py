"""The Trachtenberg multiplication rules for the multipliers 3-9, 11 and 12.

Each supported multiplier has a per-position formula over two digits: d,
the digit being processed, and n, its neighbour (the digit immediately to
the RIGHT; 0 when there is none).  A multiplication walks the multiplicand
right to left, prepending one conceptual zero in front, and at each
position evaluates the formula, adds the incoming carry, keeps the units
digit and passes the tens on as the next carry.  No multiplication table
is consulted: the formulas only add, double, halve, take complements from
9 or 10, and add 5 for odd digits.

Three position roles exist because the subtraction-style rules (x3, x4,
x8, x9) treat the rightmost digit, the remaining digits, and the prepended
zero differently.  The addition-style rules (x5, x6, x7, x11, x12) use one
formula for all three roles; with d=0 at the prepended zero and n=0 at the
rightmost digit the same expression covers every position.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .digits import DigitString
from .errors import DomainError
from .trace import ComputationTrace, TraceStep

__all__ = [
    "SUPPORTED_MULTIPLIERS",
    "PositionRole",
    "PositionFormula",
    "RuleSpec",
    "RULES",
    "check_multiplier",
    "half_floor",
    "odd_bonus",
    "position_raw_value",
    "multiply_by_rule",
]

SUPPORTED_MULTIPLIERS: tuple[int, ...] = (3, 4, 5, 6, 7, 8, 9, 11, 12)


class PositionRole(Enum):
    """Which part of the extended multiplicand a position belongs to."""

    RIGHTMOST = "rightmost"  # the last digit (no right neighbour, n = 0)
    INTERIOR = "interior"    # every digit left of it, including the first
    LEADING = "leading"      # the conceptual zero prepended in front (d = 0)


def check_multiplier(m: int) -> int:
    if m not in SUPPORTED_MULTIPLIERS:
        raise DomainError(
            f"unsupported multiplier {m!r}; supported: "
            + ", ".join(str(v) for v in SUPPORTED_MULTIPLIERS)
        )
    return m


def half_floor(x: int) -> int:
    """Integer half: floor(x/2), the fractional half is thrown away."""
    if not 0 <= x <= 10:
        raise DomainError(f"half_floor defined on 0..10, got {x!r}")
    return x // 2


def odd_bonus(d: int) -> int:
    """The odd-digit bonus: 5 when d is odd, 0 when even."""
    if not 0 <= d <= 9:
        raise DomainError(f"odd_bonus defined on digits 0..9, got {d!r}")
    return 5 if d % 2 else 0


# Base terms a position formula may start from.  "h" is half the neighbour.
_BASE_EVAL = {
    "d": lambda d, n: d,
    "2d": lambda d, n: 2 * d,
    "10-d": lambda d, n: 10 - d,
    "2(10-d)": lambda d, n: 2 * (10 - d),
    "9-d": lambda d, n: 9 - d,
    "2(9-d)": lambda d, n: 2 * (9 - d),
    "n-1": lambda d, n: n - 1,
    "n-2": lambda d, n: n - 2,
    "h-1": lambda d, n: n // 2 - 1,
    "h-2": lambda d, n: n // 2 - 2,
    "zero": lambda d, n: 0,
}

DOUBLING_BASES = frozenset({"2d", "2(10-d)", "2(9-d)"})
COMPLEMENT_BASES = frozenset({"10-d", "2(10-d)", "9-d", "2(9-d)"})
HALVING_BASES = frozenset({"h-1", "h-2"})


@dataclass(frozen=True)
class PositionFormula:
    """One role's formula: a base term plus optional +n, +half(n), +odd-bonus terms.

    `always_show_bonus` controls rendering only: the halve-the-neighbour
    rule (x5) writes "+0" for even digits where the other bonus rules write
    nothing.
    """

    base: str
    plus_neighbour: bool = False
    plus_half: bool = False
    plus_bonus: bool = False
    always_show_bonus: bool = False

    def __post_init__(self):
        if self.base not in _BASE_EVAL:
            raise ValueError(f"unknown base term {self.base!r}")

    def evaluate(self, d: int, n: int) -> int:
        value = _BASE_EVAL[self.base](d, n)
        if self.plus_neighbour:
            value += n
        if self.plus_half:
            value += n // 2
        if self.plus_bonus and d % 2:
            value += 5
        return value

    def render(self, d: int, n: int) -> str:
        """The left-hand side of a worked cell, e.g. "9+3+5" or "(10-7)2"."""
        parts = []
        if self.base == "zero":
            pass
        elif self.base == "d":
            parts.append(str(d))
        elif self.base == "2d":
            parts.append(f"{d}×2")
        elif self.base == "10-d":
            parts.append(f"10-{d}")
        elif self.base == "2(10-d)":
            parts.append(f"(10-{d})2")
        elif self.base == "9-d":
            parts.append(f"9-{d}")
        elif self.base == "2(9-d)":
            parts.append(f"(9-{d})2")
        elif self.base == "n-1":
            parts.append(f"{n}-1")
        elif self.base == "n-2":
            parts.append(f"{n}-2")
        elif self.base == "h-1":
            parts.append(f"{n // 2}-1")
        elif self.base == "h-2":
            parts.append(f"{n // 2}-2")
        if self.plus_neighbour:
            parts.append(f"+{n}")
        if self.plus_half:
            parts.append(f"+{n // 2}")
        if self.plus_bonus:
            if d % 2:
                parts.append("+5")
            elif self.always_show_bonus:
                parts.append("+0")
        expr = "".join(parts)
        return expr.lstrip("+") if expr else "0"


@dataclass(frozen=True)
class RuleSpec:
    """A multiplier's rule: one formula per position role plus a description."""

    multiplier: int
    rightmost: PositionFormula
    interior: PositionFormula
    leading: PositionFormula
    description: str

    def formula_for(self, role: PositionRole) -> PositionFormula:
        if role is PositionRole.RIGHTMOST:
            return self.rightmost
        if role is PositionRole.INTERIOR:
            return self.interior
        return self.leading


def _uniform(formula: PositionFormula, multiplier: int, description: str) -> RuleSpec:
    return RuleSpec(multiplier, formula, formula, formula, description)


RULES: dict[int, RuleSpec] = {
    11: _uniform(
        PositionFormula("d", plus_neighbour=True),
        11,
        "add each digit to its right neighbour",
    ),
    12: _uniform(
        PositionFormula("2d", plus_neighbour=True),
        12,
        "double each digit and add its right neighbour",
    ),
    6: _uniform(
        PositionFormula("d", plus_half=True, plus_bonus=True),
        6,
        "add half the neighbour to each digit, plus 5 when the digit is odd",
    ),
    7: _uniform(
        PositionFormula("2d", plus_half=True, plus_bonus=True),
        7,
        "double each digit and add half the neighbour, plus 5 when the digit is odd",
    ),
    5: _uniform(
        PositionFormula("zero", plus_half=True, plus_bonus=True, always_show_bonus=True),
        5,
        "take half the neighbour, plus 5 when the digit is odd",
    ),
    9: RuleSpec(
        9,
        PositionFormula("10-d"),
        PositionFormula("9-d", plus_neighbour=True),
        PositionFormula("n-1"),
        "rightmost: take from 10; interior: take from 9 and add the neighbour; "
        "front zero: neighbour minus 1",
    ),
    8: RuleSpec(
        8,
        PositionFormula("2(10-d)"),
        PositionFormula("2(9-d)", plus_neighbour=True),
        PositionFormula("n-2"),
        "rightmost: take from 10 and double; interior: take from 9, double, add "
        "the neighbour; front zero: neighbour minus 2",
    ),
    4: RuleSpec(
        4,
        PositionFormula("10-d", plus_bonus=True),
        PositionFormula("9-d", plus_half=True, plus_bonus=True),
        PositionFormula("h-1"),
        "rightmost: take from 10, plus 5 when odd; interior: take from 9 and add "
        "half the neighbour, plus 5 when odd; front zero: half the neighbour minus 1",
    ),
    3: RuleSpec(
        3,
        PositionFormula("2(10-d)", plus_bonus=True),
        PositionFormula("2(9-d)", plus_half=True, plus_bonus=True),
        PositionFormula("h-2"),
        "rightmost: take from 10, double, plus 5 when odd; interior: take from 9, "
        "double, add half the neighbour, plus 5 when odd; front zero: half the "
        "neighbour minus 2",
    ),
}


def position_raw_value(m: int, role: PositionRole, d: int, n: int) -> int:
    """A position's formula value before the incoming carry is added.

    Preconditions: d and n are digits; the prepended zero (LEADING) has
    d == 0 and the rightmost position has n == 0.  Values lie in -2..27;
    the negative leading values of x3/x4/x8/x9 are always covered by the
    carry arriving from the right.
    """
    check_multiplier(m)
    if not 0 <= d <= 9:
        raise DomainError(f"digit out of range: {d!r}")
    if not 0 <= n <= 9:
        raise DomainError(f"neighbour out of range: {n!r}")
    if role is PositionRole.LEADING and d != 0:
        raise DomainError("the leading position processes the prepended zero (d must be 0)")
    if role is PositionRole.RIGHTMOST and n != 0:
        raise DomainError("the rightmost position has no right neighbour (n must be 0)")
    return RULES[m].formula_for(role).evaluate(d, n)


def _render_cell(formula: PositionFormula, d: int, n: int) -> str:
    """Full worked-cell text: expression, "=", then the value with the tens
    carry parenthesized, e.g. "9+3+5=(1)7"."""
    raw = formula.evaluate(d, n)
    if raw >= 10:
        shown = f"({raw // 10}){raw % 10}"
    else:
        shown = str(raw)
    return f"{formula.render(d, n)}={shown}"


def _build_tables() -> tuple[dict, dict]:
    """Precompute raw values and cell texts for every (m, role, d, n).

    multiply_by_rule is run across hundreds of thousands of cases by the
    verification suite; table lookups keep that loop cheap while the
    formulas above stay the single source of truth.
    """
    raw_tables: dict[int, list[list[list[int]]]] = {}
    cell_tables: dict[int, list[list[list[str]]]] = {}
    for m, spec in RULES.items():
        raw_tables[m] = []
        cell_tables[m] = []
        for role in (PositionRole.RIGHTMOST, PositionRole.INTERIOR, PositionRole.LEADING):
            f = spec.formula_for(role)
            raw_tables[m].append([[f.evaluate(d, n) for n in range(10)] for d in range(10)])
            cell_tables[m].append([[_render_cell(f, d, n) for n in range(10)] for d in range(10)])
    return raw_tables, cell_tables


_RAW_TABLE, _CELL_TABLE = _build_tables()

_ROLE_BY_INDEX = (PositionRole.RIGHTMOST, PositionRole.INTERIOR, PositionRole.LEADING)


def multiply_by_rule(multiplicand: DigitString, m: int) -> ComputationTrace:
    """Multiply by walking the rule over the extended multiplicand.

    Processes 0·d1·d2·…·dk right to left (one zero prepended).  At each
    position: raw = formula(d, n), sum = raw + carry_in, result digit =
    sum mod 10, carry_out = sum div 10.  Any carry left after the leading
    position (possible only for x11/x12) becomes one extra product digit.
    """
    check_multiplier(m)
    digits = multiplicand.digits
    k = len(digits)
    raw_t = _RAW_TABLE[m]
    cell_t = _CELL_TABLE[m]

    steps: list[TraceStep] = []
    result_digits: list[int] = []
    carry = 0
    for pos in range(k + 1):
        if pos == 0:
            role_i, d, n = 0, digits[k - 1], 0
        elif pos < k:
            role_i, d, n = 1, digits[k - 1 - pos], digits[k - pos]
        else:
            role_i, d, n = 2, 0, digits[0]
        raw = raw_t[role_i][d][n]
        total = raw + carry
        if total < 0:
            raise AssertionError(
                f"internal invariant broken: negative sum {total} at position {pos} "
                f"of {multiplicand} × {m}"
            )
        result_digit = total % 10
        carry_out = total // 10
        steps.append(
            TraceStep(
                position_index=pos,
                role=_ROLE_BY_INDEX[role_i],
                digit=d,
                neighbour=n,
                raw_value=raw,
                carry_in=carry,
                sum=total,
                result_digit=result_digit,
                carry_out=carry_out,
                formula=cell_t[role_i][d][n],
            )
        )
        result_digits.append(result_digit)
        carry = carry_out

    extra = carry if carry > 0 else None
    result_digits.reverse()
    if extra is not None:
        result_digits.insert(0, extra)
    product = DigitString.from_digits(result_digits)
    return ComputationTrace(
        multiplicand=multiplicand,
        multiplier=m,
        steps=steps,
        extra_leading_digit=extra,
        product=product,
    )

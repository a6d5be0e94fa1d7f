"""Independent reference multiplication and bulk verification.

The reference is plain schoolbook single-digit long multiplication: one
times-table product per digit with standard carry propagation.  It shares
no position logic with the rule engine, so agreement between the two is
evidence of correctness rather than a tautology.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Sequence

from .digits import DigitString
from .errors import DomainError
from .rules import SUPPORTED_MULTIPLIERS, check_multiplier, multiply_by_rule
from .trace import ComputationTrace

__all__ = ["VerificationReport", "reference_multiply", "exhaustive_verify"]

MISMATCH_CAP = 100


def _table_multiply_digits(digits: Sequence[int], m: int) -> list[int]:
    """Schoolbook pass for a single-digit multiplier, least significant first."""
    out: list[int] = []
    carry = 0
    for d in reversed(digits):
        p = m * d + carry
        out.append(p % 10)
        carry = p // 10
    while carry:
        out.append(carry % 10)
        carry //= 10
    return out


def reference_multiply(a: DigitString, m: int) -> DigitString:
    """Reference product a × m for m in 0..12.

    m of 10, 11, 12 is decomposed as a×10 + a×(m−10) so every table
    product stays single-digit.
    """
    if not 0 <= m <= 12:
        raise DomainError(f"reference multiplier must be in 0..12, got {m!r}")
    if m <= 9:
        low = _table_multiply_digits(a.digits, m)
    else:
        partial = _table_multiply_digits(a.digits, m - 10)
        shifted = [0] + [a.digits[len(a.digits) - 1 - i] for i in range(len(a.digits))]
        low = []
        carry = 0
        for i in range(max(len(partial), len(shifted))):
            s = carry
            if i < len(partial):
                s += partial[i]
            if i < len(shifted):
                s += shifted[i]
            low.append(s % 10)
            carry = s // 10
        while carry:
            low.append(carry % 10)
            carry //= 10
    return DigitString.from_digits(reversed(low))


@dataclass
class VerificationReport:
    """Outcome of a bulk rule-vs-reference comparison."""

    cases_run: int = 0
    mismatches: list[tuple[str, int, str, str]] = field(default_factory=list)
    invariant_violations: list[tuple[str, int, str]] = field(default_factory=list)
    duration: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.invariant_violations

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.cases_run += other.cases_run
        self.mismatches = (self.mismatches + other.mismatches)[:MISMATCH_CAP]
        self.invariant_violations = (
            self.invariant_violations + other.invariant_violations
        )[:MISMATCH_CAP]
        return self


def check_trace_invariants(t: ComputationTrace) -> str | None:
    """Return a message for the first broken engine invariant, None if clean."""
    k = len(t.multiplicand)
    if len(t.steps) != k + 1:
        return f"expected {k + 1} steps, got {len(t.steps)}"
    prev_carry = 0
    for s in t.steps:
        if s.carry_in != prev_carry:
            return f"carry chain broken at position {s.position_index}"
        if s.carry_in not in (0, 1, 2) or s.carry_out not in (0, 1, 2):
            return f"carry out of range at position {s.position_index}"
        if s.sum != s.raw_value + s.carry_in or s.sum < 0:
            return f"bad sum at position {s.position_index}"
        if not 0 <= s.result_digit <= 9:
            return f"result digit out of range at position {s.position_index}"
        if s.result_digit != s.sum % 10 or s.carry_out != s.sum // 10:
            return f"digit/carry split wrong at position {s.position_index}"
        prev_carry = s.carry_out
    final_carry = t.steps[-1].carry_out
    if t.multiplier <= 9 and final_carry != 0:
        return f"final carry {final_carry} for multiplier {t.multiplier}"
    if final_carry > 1:
        return f"final carry {final_carry} exceeds 1"
    if (t.extra_leading_digit or 0) != final_carry:
        return "extra leading digit does not match the final carry"
    return None


def _verify_range(args: tuple[int, int, tuple[int, ...]]) -> VerificationReport:
    start, stop, multipliers = args
    report = VerificationReport()
    for value in range(start, stop):
        a = DigitString.from_int(value)
        for m in multipliers:
            t = multiply_by_rule(a, m)
            expected = reference_multiply(a, m)
            report.cases_run += 1
            if t.product.digits != expected.digits:
                if len(report.mismatches) < MISMATCH_CAP:
                    report.mismatches.append((str(a), m, str(expected), str(t.product)))
            problem = check_trace_invariants(t)
            if problem is not None and len(report.invariant_violations) < MISMATCH_CAP:
                report.invariant_violations.append((str(a), m, problem))
    return report


def exhaustive_verify(
    max_value: int,
    multipliers: Iterable[int] | None = None,
    workers: int = 1,
) -> VerificationReport:
    """Compare the rule engine against the reference for every multiplicand
    0..max_value and every listed multiplier, checking engine invariants on
    each trace.  Mismatches are collected (capped), not raised.

    With workers > 1 the value range is partitioned across processes; the
    merge is associative and chunk order is fixed, so the verdict and
    report contents do not depend on scheduling.
    """
    if max_value < 0:
        raise DomainError("max_value must be >= 0")
    ms = tuple(check_multiplier(m) for m in multipliers) if multipliers is not None \
        else SUPPORTED_MULTIPLIERS
    started = time.perf_counter()
    total = max_value + 1
    if workers <= 1 or total < 10_000:
        report = _verify_range((0, total, ms))
    else:
        chunk = (total + workers * 4 - 1) // (workers * 4)
        spans = [(lo, min(lo + chunk, total), ms) for lo in range(0, total, chunk)]
        report = VerificationReport()
        with Pool(processes=workers) as pool:
            for part in pool.map(_verify_range, spans):
                report.merge(part)
    report.duration = time.perf_counter() - started
    return report

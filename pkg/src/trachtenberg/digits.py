"""Nonnegative decimal numbers as canonical digit sequences.

Numbers flow through the engine as ordered digit tuples (most significant
first) rather than ints, because every rule works digit-by-digit and the
traces must expose individual positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError

__all__ = ["DigitString", "parse", "to_text"]


@dataclass(frozen=True, slots=True)
class DigitString:
    """A nonnegative integer as a tuple of decimal digits, most significant first.

    Canonical form: every digit in 0..9, length >= 1, and no leading zero
    unless the value is exactly zero (the single digit 0).
    """

    digits: tuple[int, ...]

    def __post_init__(self):
        if not self.digits:
            raise ValueError("digit sequence must not be empty")
        for d in self.digits:
            if not 0 <= d <= 9:
                raise ValueError(f"digit out of range: {d!r}")
        if len(self.digits) > 1 and self.digits[0] == 0:
            raise ValueError(f"leading zero in {self.digits!r}")

    @classmethod
    def from_int(cls, value: int) -> DigitString:
        if value < 0:
            raise ValueError("negative values are not representable")
        return cls(tuple(ord(c) - 48 for c in str(value)))

    @classmethod
    def from_digits(cls, digits: Iterable[int]) -> DigitString:
        """Build from a possibly non-canonical digit sequence, stripping leading zeros."""
        ds = tuple(digits)
        i = 0
        while i < len(ds) - 1 and ds[i] == 0:
            i += 1
        return cls(ds[i:] if ds else (0,))

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __int__(self) -> int:
        value = 0
        for d in self.digits:
            value = value * 10 + d
        return value


def parse(text: str) -> DigitString:
    """Parse decimal text into a canonical DigitString.

    Leading zeros are accepted and stripped; anything that is not an ASCII
    digit (signs, spaces, separators) raises ParseError.
    """
    if not text:
        raise ParseError("empty input")
    for c in text:
        if not "0" <= c <= "9":
            raise ParseError(f"invalid character {c!r} in number {text!r}")
    return DigitString.from_digits(ord(c) - 48 for c in text)


def to_text(n: DigitString) -> str:
    """Render a DigitString as plain decimal text (inverse of parse)."""
    return str(n)

"""Exact base-3/base-2 digit strings and the ternary ultrametric.

Everything here is arbitrary-precision rational arithmetic
(``fractions.Fraction``); no floating point anywhere.  Finite digit
strings follow the terminating convention: a string stands for the
infinite sequence obtained by appending zeros, so every finite string
is the greedy expansion of its own value, zero-padded.

The distance ``delta3`` is 3**-k for the first index k at which two
(zero-padded) strings disagree.  For identical strings the minimum
ranges over an empty set; we define that case to be 0, which is the
convention making delta3 a pseudometric (and in fact an ultrametric).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "TernaryString",
    "BinaryString",
    "parse_rational",
    "format_rational",
    "to_ternary",
    "ternary_value",
    "delta3",
]


@dataclass(frozen=True)
class TernaryString:
    """Finite digit sequence over {0, 1, 2}, most significant digit first."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d not in (0, 1, 2) for d in self.digits):
            raise ValueError(f"ternary digits must be 0, 1 or 2, got {self.digits!r}")

    @property
    def depth(self) -> int:
        return len(self.digits)

    def digit(self, k: int) -> int:
        """Digit at index k under the zero-padding convention."""
        return self.digits[k] if 0 <= k < len(self.digits) else 0

    def padded(self, depth: int) -> "TernaryString":
        if depth <= len(self.digits):
            return self
        return TernaryString(self.digits + (0,) * (depth - len(self.digits)))

    @classmethod
    def from_text(cls, text: str) -> "TernaryString":
        return cls(tuple(int(c) for c in text))

    def text(self) -> str:
        return "".join(str(d) for d in self.digits)


@dataclass(frozen=True)
class BinaryString:
    """Finite digit sequence over {0, 1}; indexes one sheet of the construction."""

    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(d not in (0, 1) for d in self.digits):
            raise ValueError(f"binary digits must be 0 or 1, got {self.digits!r}")

    @property
    def depth(self) -> int:
        return len(self.digits)

    def digit(self, k: int) -> int:
        return self.digits[k] if 0 <= k < len(self.digits) else 0

    @classmethod
    def from_text(cls, text: str) -> "BinaryString":
        return cls(tuple(int(c) for c in text))

    def text(self) -> str:
        return "".join(str(d) for d in self.digits)


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" text; a bare integer "k" is accepted as well."""
    parts = text.strip().split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        num, den = int(parts[0]), int(parts[1])
        if den <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return Fraction(num, den)
    raise ValueError(f"not a rational: {text!r}")


def format_rational(q: Fraction) -> str:
    """Canonical "num/den" form; integers render with denominator 1."""
    return f"{q.numerator}/{q.denominator}"


def to_ternary(q: Fraction, depth: int) -> TernaryString:
    """Greedy (terminating-preferred) base-3 expansion of q in [0, 1].

    Digit k is floor(q * 3**(k+1)) mod 3, which is the expansion ending
    in zeros whenever q terminates at the requested depth.  q = 1 is the
    one value without such an expansion and returns the all-2s string.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not 0 <= q <= 1:
        raise ValueError(f"value out of [0, 1]: {q}")
    if q == 1:
        return TernaryString((2,) * depth)
    num, den = q.numerator, q.denominator
    digits = []
    for _ in range(depth):
        num *= 3
        d, num = divmod(num, den)
        digits.append(d)
    return TernaryString(tuple(digits))


def ternary_value(s: TernaryString) -> Fraction:
    """Exact value sum(digits[k] * 3**-(k+1))."""
    acc = 0
    for d in s.digits:
        acc = acc * 3 + d
    return Fraction(acc, 3 ** len(s.digits))


def delta3(s: TernaryString, t: TernaryString) -> Fraction:
    """Ternary ultrametric: 3**-k at the first disagreeing index k, 0 if equal.

    Strings of unequal depth are zero-padded to the longer one, consistent
    with the terminating convention.
    """
    for k in range(max(s.depth, t.depth)):
        if s.digit(k) != t.digit(k):
            return Fraction(1, 3**k)
    return Fraction(0)

"""Digit-interleaving embedding of sheet-labeled interval points into [0,1]^3.

A point carries an x value in [0,1], its chosen base-3 expansion t, and a
binary sheet label y.  The three image coordinates interleave the digits

    coordinate i:  (t[2i], t[2i+1], y[0],  t[6+2i], t[6+2i+1], y[1],  ...)

so every t digit and every y digit lands somewhere in the image: the map
is injective and invertible by reading the digits back.  Because y digits
occupy every position congruent to 2 mod 3 and are at most 1, image
coordinates never carry the digit 2 there; that reserved-digit gap is what
keeps coordinate values apart (an asymmetric-Cantor picture) and gives the
inverse-Hoelder lower bound checked by :func:`check_facts`.

The pseudometric on the domain is |x - x'| and ignores y entirely.  That
degeneracy is load-bearing: two sheets over the same x are at pseudo-
distance 0 yet embed to distinct points.

All comparisons are exact; square roots never appear (inequalities are
checked in squared or cleared form).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .digits import BinaryString, TernaryString, delta3, ternary_value, to_ternary

__all__ = [
    "IManyPoint",
    "Point3",
    "FactReport",
    "MalformedImageError",
    "DegeneratePairError",
    "interleave",
    "embed_strings",
    "embed",
    "decode",
    "check_facts",
    "check_close_expanding",
    "estimate_equivalence",
]

# Squared close-expanding constant: (1/243)**2 = 3**-10.
CLOSE_EXPANDING_CONSTANT = Fraction(1, 243)
_CSQ = CLOSE_EXPANDING_CONSTANT**2
# Per-coordinate metric comparison constant of the image (3**-4).
COORD_METRIC_CONSTANT = Fraction(1, 81)


class MalformedImageError(ValueError):
    """Digit strings that cannot be the image of any domain point."""


class DegeneratePairError(ValueError):
    """Two points with identical digit data where distinct ones are required."""


@dataclass(frozen=True)
class IManyPoint:
    """A point (x, y) of the many-sheeted interval with its chosen expansion.

    Invariant: t is the greedy depth-limited expansion of x, so
    ternary_value(t) == x exactly whenever x terminates within t.depth
    (x = 1 is carried by the all-2s string, and a non-terminating x by its
    truncation; both are documented sampling conventions).
    """

    x: Fraction
    t: TernaryString
    y: BinaryString

    def __post_init__(self) -> None:
        if self.t.depth < 1:
            raise ValueError("expansion must have at least one digit")
        if self.t != to_ternary(self.x, self.t.depth):
            raise ValueError(
                f"t is not the chosen expansion of x: {self.t.text()!r} vs x={self.x}"
            )

    @classmethod
    def from_value(cls, x: Fraction, y: BinaryString, depth: int) -> "IManyPoint":
        return cls(x, to_ternary(Fraction(x), depth), y)

    @classmethod
    def from_digits(cls, t: TernaryString, y: BinaryString) -> "IManyPoint":
        return cls(ternary_value(t), t, y)

    def digit_data_equals(self, other: "IManyPoint") -> bool:
        """Equality of (t, y) under the zero-padding convention."""
        tdepth = max(self.t.depth, other.t.depth)
        ydepth = max(self.y.depth, other.y.depth)
        return all(
            self.t.digit(k) == other.t.digit(k) for k in range(tdepth)
        ) and all(self.y.digit(k) == other.y.digit(k) for k in range(ydepth))


@dataclass(frozen=True)
class Point3:
    """Exact-rational point of the unit cube."""

    c0: Fraction
    c1: Fraction
    c2: Fraction

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)


def interleave(i: int, t: TernaryString, b: BinaryString, blocks: int) -> TernaryString:
    """Digit string of image coordinate i, truncated to `blocks` 3-digit blocks.

    Block k is (t[6k+2i], t[6k+2i+1], b[k]); missing digits are zero-padded.
    Positions congruent to 2 mod 3 hold b digits and therefore never a 2.
    """
    if i not in (0, 1, 2):
        raise IndexError(f"coordinate index must be 0, 1 or 2, got {i}")
    if blocks < 1:
        raise ValueError("blocks must be at least 1")
    out = []
    for k in range(blocks):
        out.append(t.digit(6 * k + 2 * i))
        out.append(t.digit(6 * k + 2 * i + 1))
        out.append(b.digit(k))
    return TernaryString(tuple(out))


def embed_strings(
    p: IManyPoint, blocks: int
) -> tuple[TernaryString, TernaryString, TernaryString]:
    """The three coordinate digit strings of the embedding of p."""
    return (
        interleave(0, p.t, p.y, blocks),
        interleave(1, p.t, p.y, blocks),
        interleave(2, p.t, p.y, blocks),
    )


def embed(p: IManyPoint, blocks: int) -> Point3:
    """Exact-rational image of p under the interleaving embedding."""
    s0, s1, s2 = embed_strings(p, blocks)
    return Point3(ternary_value(s0), ternary_value(s1), ternary_value(s2))


def decode(
    strings: Sequence[TernaryString], blocks: int
) -> tuple[TernaryString, BinaryString]:
    """Invert the interleaving: recover (t, b) from the three coordinate strings.

    Raises MalformedImageError if a reserved position (index 2 mod 3) holds
    the digit 2, if the three coordinates disagree on the shared b digits,
    or if a string does not have exactly 3*blocks digits.
    """
    if blocks < 1:
        raise ValueError("blocks must be at least 1")
    if len(strings) != 3:
        raise MalformedImageError("exactly three coordinate strings required")
    for s in strings:
        if s.depth != 3 * blocks:
            raise MalformedImageError(
                f"coordinate string must have {3 * blocks} digits, got {s.depth}"
            )
        for k in range(blocks):
            if s.digits[3 * k + 2] == 2:
                raise MalformedImageError(
                    f"digit 2 at reserved position {3 * k + 2}: not an image point"
                )
    b = []
    for k in range(blocks):
        shared = {s.digits[3 * k + 2] for s in strings}
        if len(shared) != 1:
            raise MalformedImageError(f"coordinates disagree on shared digit {k}")
        b.append(shared.pop())
    t = [0] * (6 * blocks)
    for i, s in enumerate(strings):
        for k in range(blocks):
            t[6 * k + 2 * i] = s.digits[3 * k]
            t[6 * k + 2 * i + 1] = s.digits[3 * k + 1]
    return TernaryString(tuple(t)), BinaryString(tuple(b))


def _first_difference(s: TernaryString, t: TernaryString) -> int | None:
    for k in range(max(s.depth, t.depth)):
        if s.digit(k) != t.digit(k):
            return k
    return None


@dataclass(frozen=True)
class FactReport:
    """Exact evaluation of the four embedding inequalities on one pair.

    The booleans record, in order:
      fact1     |x_p - x_q| <= delta3(t_p, t_q)
      fact2     delta3(t_p, t_q) <= 9 * max_i delta3(coord_i)**2
      fact3     max_i |coord value gap| >= 3**-4 * max_i delta3(coord_i)
      fact4     (sup-norm gap)**2 <= (Euclidean gap)**2
      combined  (Euclidean gap)**2 >= 3**-10 * |x_p - x_q|

    combined is what the four facts chain to; it is computed independently
    here so the chain itself is testable.  First-difference positions are
    exposed because fact2's mechanism is positional: a t disagreement at
    index n surfaces in some coordinate by index n//2 + 1.
    """

    fact1: bool
    fact2: bool
    fact3: bool
    fact4: bool
    combined: bool
    x_gap: Fraction
    t_delta: Fraction
    coord_deltas: tuple[Fraction, Fraction, Fraction]
    linf: Fraction
    l2_sq: Fraction
    t_first_diff: int | None
    coord_first_diffs: tuple[int | None, int | None, int | None]

    @property
    def all_hold(self) -> bool:
        return self.fact1 and self.fact2 and self.fact3 and self.fact4 and self.combined

    def to_json_dict(self) -> dict:
        from .digits import format_rational as fr

        return {
            "fact1": self.fact1,
            "fact2": self.fact2,
            "fact3": self.fact3,
            "fact4": self.fact4,
            "combined": self.combined,
            "x_gap": fr(self.x_gap),
            "t_delta": fr(self.t_delta),
            "coord_deltas": [fr(d) for d in self.coord_deltas],
            "linf": fr(self.linf),
            "l2_sq": fr(self.l2_sq),
            "t_first_diff": self.t_first_diff,
            "coord_first_diffs": list(self.coord_first_diffs),
        }


def check_facts(p: IManyPoint, q: IManyPoint, blocks: int) -> FactReport:
    """Evaluate the four inequalities and their combination, exactly.

    Exactness of fact1 requires value-exact expansions, and fact2 requires
    the truncation to cover all digit data, so both points must fit inside
    `blocks` (t.depth <= 6*blocks, y.depth <= blocks).
    """
    if p.digit_data_equals(q):
        raise DegeneratePairError("points have identical digit data")
    for pt in (p, q):
        if pt.t.depth > 6 * blocks or pt.y.depth > blocks:
            raise ValueError(
                f"digit data deeper than {blocks} blocks; facts would be vacuous"
            )
    x_gap = abs(p.x - q.x)
    t_delta = delta3(p.t, q.t)
    sp = embed_strings(p, blocks)
    sq = embed_strings(q, blocks)
    coord_deltas = tuple(delta3(a, b) for a, b in zip(sp, sq))
    max_delta = max(coord_deltas)
    gaps = tuple(abs(ternary_value(a) - ternary_value(b)) for a, b in zip(sp, sq))
    linf = max(gaps)
    l2_sq = sum(g * g for g in gaps)
    return FactReport(
        fact1=x_gap <= t_delta,
        fact2=t_delta <= 9 * max_delta * max_delta,
        fact3=linf >= COORD_METRIC_CONSTANT * max_delta,
        fact4=linf * linf <= l2_sq,
        combined=l2_sq >= _CSQ * x_gap,
        x_gap=x_gap,
        t_delta=t_delta,
        coord_deltas=coord_deltas,
        linf=linf,
        l2_sq=l2_sq,
        t_first_diff=_first_difference(p.t, q.t),
        coord_first_diffs=tuple(_first_difference(a, b) for a, b in zip(sp, sq)),
    )


def check_close_expanding(pairs, c: Fraction):
    """Check distB**2 >= c**2 * distA on every pair (squared form of the bound).

    Each pair is (pointA, pointB, distA, distB_squared); the points ride
    along only for reporting.  Returns (True, None) or (False, the first
    failing pair).  An empty list is vacuously true.
    """
    csq = c * c
    for pair in pairs:
        _, _, dist_a, dist_b_sq = pair
        if dist_a < 0 or dist_b_sq < 0:
            raise ValueError("distances must be nonnegative")
        if dist_b_sq < csq * dist_a:
            return False, pair
    return True, None


def estimate_equivalence(samples) -> tuple[Fraction, Fraction]:
    """Tightest empirical constants (c1, c2) with c1*d1 >= d2 >= c2*d1.

    Samples are (d1, d2) pairs with d1 > 0; a zero d1 against a positive d2
    is a witness that no such constants exist and raises ZeroDivisionError.
    """
    ratios = []
    for d1, d2 in samples:
        if d1 == 0:
            if d2 > 0:
                raise ZeroDivisionError(
                    f"d1 = 0 with d2 = {d2} > 0: metrics not equivalent on sample"
                )
            raise ValueError("sample with d1 = 0 violates the precondition")
        ratios.append(Fraction(d2) / d1)
    if not ratios:
        raise ValueError("at least one sample required")
    return max(ratios), min(ratios)

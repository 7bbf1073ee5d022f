"""Exact axis-aligned boxes, optionally on periodic axes."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

Number = int | float | str | Fraction


def frac(x: Number) -> Fraction:
    """Exact rational from an int, a Fraction, a decimal or ``p/q`` string.

    Floats go through their shortest decimal repr, so ``0.1`` means 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def frac_text(x: Fraction) -> str:
    """Exact decimal text when one exists, ``p/q`` otherwise."""
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _interval_pieces(
    a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction], period: Fraction | None
) -> list[tuple[Fraction, Fraction]]:
    if period is None:
        lo, hi = max(a[0], b[0]), min(a[1], b[1])
        return [(lo, hi)] if lo <= hi else []
    out = []
    for k in (-1, 0, 1):
        lo, hi = max(a[0], b[0] + k * period), min(a[1], b[1] + k * period)
        if lo <= hi:
            out.append((lo, hi))
    return out


def _contains(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction], period: Fraction | None) -> bool:
    shifts = (0,) if period is None else (-1, 0, 1)
    for k in shifts:
        s = 0 if period is None else k * period
        if a[0] <= b[0] + s and b[1] + s <= a[1]:
            return True
    return False


@dataclass(frozen=True)
class Box:
    """Product of closed intervals ``[lo_i, hi_i]``.

    On an axis with a period ``P`` the interval is read modulo ``P``; its
    length must be below ``P`` and ``lo`` is normalised into ``[0, P)``.
    """

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    periods: tuple[Fraction | None, ...]

    def __post_init__(self) -> None:
        if not len(self.lo) == len(self.hi) == len(self.periods):
            raise ValueError("box bounds and periods must have the same length")
        lo, hi = list(self.lo), list(self.hi)
        for i, p in enumerate(self.periods):
            if lo[i] > hi[i]:
                raise ValueError(f"empty interval on axis {i}: [{lo[i]}, {hi[i]}]")
            if p is not None:
                if hi[i] - lo[i] >= p:
                    raise ValueError(f"interval on periodic axis {i} is not shorter than the period")
                shift = (lo[i] // p) * p
                lo[i] -= shift
                hi[i] -= shift
        object.__setattr__(self, "lo", tuple(lo))
        object.__setattr__(self, "hi", tuple(hi))

    @classmethod
    def make(
        cls, intervals: Iterable[Sequence[Number]], periods: Sequence[Number | None] | None = None
    ) -> Box:
        iv = [(frac(a), frac(b)) for a, b in intervals]
        per = tuple(None if p is None else frac(p) for p in (periods or [None] * len(iv)))
        return cls(tuple(a for a, _ in iv), tuple(b for _, b in iv), per)

    @property
    def ambient(self) -> int:
        return len(self.lo)

    @property
    def dimension(self) -> int:
        """Number of non-degenerate axes."""
        return sum(1 for a, b in zip(self.lo, self.hi) if b > a)

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.lo, self.hi))

    def intersect(self, other: Box) -> list[Box]:
        """Exact intersection; a wrap-around can split it into several boxes."""
        if self.periods != other.periods:
            raise ValueError("boxes live in different ambient spaces")
        per_axis = [
            _interval_pieces(a, b, p)
            for a, b, p in zip(self.intervals(), other.intervals(), self.periods)
        ]
        if any(not ps for ps in per_axis):
            return []
        return [
            Box(tuple(a for a, _ in combo), tuple(b for _, b in combo), self.periods)
            for combo in product(*per_axis)
        ]

    def meets(self, other: Box) -> bool:
        return all(
            _interval_pieces(a, b, p)
            for a, b, p in zip(self.intervals(), other.intervals(), self.periods)
        )

    def contains(self, other: Box) -> bool:
        return all(
            _contains(a, b, p) for a, b, p in zip(self.intervals(), other.intervals(), self.periods)
        )

    def to_list(self) -> list[list[str]]:
        return [[frac_text(a), frac_text(b)] for a, b in self.intervals()]


def prune(boxes: Iterable[Box]) -> list[Box]:
    """Drop boxes contained in another one; the union is unchanged."""
    out: list[Box] = []
    for b in sorted(set(boxes), key=lambda x: (-x.dimension, x.lo, x.hi)):
        if not any(c.contains(b) for c in out):
            out.append(b)
    return out


def intersect_unions(a: Sequence[Box], b: Sequence[Box]) -> list[Box]:
    """Intersection of two unions of boxes, as a pruned union of boxes."""
    return prune(p for x in a for y in b for p in x.intersect(y))

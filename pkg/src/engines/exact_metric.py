"""Exact rational arithmetic, finite point sets on the line and the Hausdorff metric.

All values are fractions.Fraction; nothing in this module touches floating point.
For finite sets the infimum over open-ball radii in the definition

    dist_H(A, B) = inf{eps > 0 : A in B_eps(B) and B in B_eps(A)}

is attained by the max-min formula, because the admissible radii are exactly the
reals above the largest nearest-neighbour distance. hausdorff_by_definition
evaluates the infimum directly over the finite candidate set as a cross-check.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple

from src.engines.errors import EmptyCompactSetError, GapUndefinedError

Rational = Fraction

_RATIONAL_PATTERN = re.compile(r"-?[0-9]+(/[0-9]+)?")


@dataclass(frozen=True)
class PointSet:
    """Strictly increasing tuple of exact coordinates."""

    points: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for left, right in zip(self.points, self.points[1:]):
            if not left < right:
                raise ValueError("PointSet must be strictly increasing")

    @classmethod
    def of(cls, values: Iterable[object]) -> "PointSet":
        """Build a PointSet from any iterable of rationals, sorting and deduplicating."""
        return cls(tuple(sorted({Fraction(v) for v in values})))

    @classmethod
    def empty(cls) -> "PointSet":
        return cls(())

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, value: object) -> bool:
        if not isinstance(value, (Fraction, int)):
            return False
        index = bisect_left(self.points, value)
        return index < len(self.points) and self.points[index] == value

    def __le__(self, other: "PointSet") -> bool:
        return all(p in other for p in self.points)

    def __lt__(self, other: "PointSet") -> bool:
        return len(self) < len(other) and self <= other

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet.of(self.points + other.points)

    def nearest(self, x: Fraction) -> Fraction:
        """Distance from x to the closest point of the set."""
        if not self.points:
            raise EmptyCompactSetError()
        index = bisect_left(self.points, x)
        best = None
        for j in (index - 1, index):
            if 0 <= j < len(self.points):
                d = abs(self.points[j] - x)
                if best is None or d < best:
                    best = d
        return best


def _require_nonempty(*sets: PointSet) -> None:
    for s in sets:
        if len(s) == 0:
            raise EmptyCompactSetError()


def directed_distance(A: PointSet, B: PointSet) -> Fraction:
    """max over a in A of the distance from a to B (zero iff A is inside B)."""
    _require_nonempty(A, B)
    return max(B.nearest(a) for a in A)


def hausdorff_distance(A: PointSet, B: PointSet) -> Fraction:
    """Hausdorff distance between two nonempty finite subsets of the line."""
    _require_nonempty(A, B)
    if A.points == B.points:
        return Fraction(0)
    return max(directed_distance(A, B), directed_distance(B, A))


def hausdorff_by_definition(A: PointSet, B: PointSet) -> Fraction:
    """Infimum of admissible open-ball radii, searched over the finite candidate set.

    A radius eps is admissible iff every point of each set lies at distance < eps
    from the other set. For any candidate c the radii just above c are admissible
    iff every nearest-neighbour distance is <= c, a monotone predicate, so
    bisection over the sorted candidates finds the least one.
    """
    _require_nonempty(A, B)
    candidates = sorted({Fraction(0)} | {abs(a - b) for a in A for b in B})

    def covers(c: Fraction) -> bool:
        return all(any(abs(a - b) <= c for b in B) for a in A) and all(
            any(abs(a - b) <= c for a in A) for b in B
        )

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if covers(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return candidates[lo]


def min_gap(A: PointSet) -> Fraction:
    """Smallest difference between consecutive points."""
    if len(A) < 2:
        raise GapUndefinedError()
    return min(right - left for left, right in zip(A.points, A.points[1:]))


def is_eps_dense(S: Iterable[Fraction], K: Iterable[Fraction], eps: Fraction) -> bool:
    """True iff every point of K is at distance < eps from some point of S."""
    sample = PointSet.of(S)
    if len(sample) == 0:
        return False
    return all(sample.nearest(y) < eps for y in K)


def consecutive_pairs(values: Sequence[Fraction]) -> List[Tuple[Fraction, Fraction]]:
    return list(zip(values, values[1:]))


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", dropping the denominator when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" string (or a bare integer); anything else is rejected."""
    if not isinstance(text, str) or _RATIONAL_PATTERN.fullmatch(text) is None:
        raise ValueError(f"malformed rational: {text!r}")
    numerator, _, denominator = text.partition("/")
    if denominator and int(denominator) == 0:
        raise ValueError(f"malformed rational: {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def point_set_to_json(A: PointSet) -> List[str]:
    return [format_rational(p) for p in A]


def point_set_from_json(values: Sequence[str]) -> PointSet:
    return PointSet.of(parse_rational(v) for v in values)

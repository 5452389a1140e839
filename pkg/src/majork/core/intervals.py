"""Finite unions of disjoint intervals of ``[0, inf)`` with exact endpoints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .scalar import INF, Scalar, fmt


@dataclass(frozen=True)
class Interval:
    lo: Scalar
    hi: Scalar
    lo_open: bool = False
    hi_open: bool = True

    def __post_init__(self):
        if self.hi == INF:
            object.__setattr__(self, "hi_open", True)

    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and not self.lo_open and not self.hi_open)

    def contains(self, t) -> bool:
        if t < self.lo or (t == self.lo and self.lo_open):
            return False
        if t > self.hi or (t == self.hi and self.hi_open):
            return False
        return True

    @property
    def length(self):
        return self.hi - self.lo

    def __str__(self):
        return f"{'(' if self.lo_open else '['}{fmt(self.lo)}, {fmt(self.hi)}{')' if self.hi_open else ']'}"


def closed_open(lo, hi) -> Interval:
    """The semi-open ``[lo, hi)`` used by the decomposition families."""
    return Interval(lo, hi, False, True)


def _lo_key(iv: Interval):
    # closed lower endpoints sort before open ones at the same value
    return (iv.lo, 1 if iv.lo_open else 0)


def _touches(a: Interval, b: Interval) -> bool:
    """True if ``a`` (which starts no later than ``b``) overlaps or abuts ``b`` with no gap."""
    if b.lo < a.hi:
        return True
    if b.lo == a.hi:
        return not (a.hi_open and b.lo_open)
    return False


class IntervalSet:
    """Sorted, pairwise disjoint, maximal intervals.

    Construction normalizes any iterable of :class:`Interval` (overlapping or
    adjacent pieces are merged, empty pieces dropped).
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Interval] = ()):
        items = sorted((iv for iv in intervals if not iv.is_empty()), key=_lo_key)
        merged: list[Interval] = []
        for iv in items:
            if merged and _touches(merged[-1], iv):
                last = merged[-1]
                if iv.hi > last.hi or (iv.hi == last.hi and not iv.hi_open):
                    hi, hi_open = iv.hi, iv.hi_open
                else:
                    hi, hi_open = last.hi, last.hi_open
                merged[-1] = Interval(last.lo, hi, last.lo_open, hi_open)
            else:
                merged.append(iv)
        self.intervals = tuple(merged)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls()

    @classmethod
    def half_line(cls, lo=0) -> "IntervalSet":
        return cls([Interval(lo, INF, False, True)])

    @classmethod
    def co(cls, lo, hi) -> "IntervalSet":
        return cls([closed_open(lo, hi)])

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def contains(self, t) -> bool:
        return any(iv.contains(t) for iv in self.intervals)

    __contains__ = contains

    def component(self, t) -> Interval | None:
        """The maximal interval containing ``t``."""
        for iv in self.intervals:
            if iv.contains(t):
                return iv
        return None

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    __or__ = union

    def complement(self, lo=0) -> "IntervalSet":
        """``[lo, inf)`` minus this set."""
        out = []
        cur, cur_open = lo, False
        for iv in self.intervals:
            if iv.hi < cur or (iv.hi == cur and (iv.hi_open or cur_open)):
                continue
            if iv.lo > cur or (iv.lo == cur and iv.lo_open and not cur_open):
                out.append(Interval(cur, iv.lo, cur_open, not iv.lo_open))
            cur, cur_open = iv.hi, not iv.hi_open
            if cur == INF:
                return IntervalSet(out)
        out.append(Interval(cur, INF, cur_open, True))
        return IntervalSet(out)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                if a.lo > b.lo or (a.lo == b.lo and a.lo_open):
                    lo, lo_open = a.lo, a.lo_open
                else:
                    lo, lo_open = b.lo, b.lo_open
                if a.hi < b.hi or (a.hi == b.hi and a.hi_open):
                    hi, hi_open = a.hi, a.hi_open
                else:
                    hi, hi_open = b.hi, b.hi_open
                out.append(Interval(lo, hi, lo_open, hi_open))
        return IntervalSet(out)

    __and__ = intersection

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement(0))

    __sub__ = difference

    def covers(self, other: "IntervalSet") -> bool:
        return other.difference(self).is_empty()

    def measure(self):
        return sum((iv.length for iv in self.intervals), Fraction(0))

    def __str__(self):
        return " U ".join(str(iv) for iv in self.intervals) if self.intervals else "{}"

    __repr__ = __str__

    def to_json(self):
        return [[fmt(iv.lo), fmt(iv.hi), iv.lo_open, iv.hi_open] for iv in self.intervals]

"""Step functions on ``[0, inf)``.

:class:`StepFn` is constant on the unit cells ``[n-1, n)``; it is the function
``sum x_n chi_[n-1, n)`` attached to a sequence. :class:`Profile` allows arbitrary
(rational) breakpoints and is what you get after masking a StepFn by a set with
non-integer endpoints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..errors import ArithmeticModeMismatch, NegativeCell
from .intervals import IntervalSet
from .scalar import INF, Mode, Scalar, is_integral, mode_of, parse_scalar, power
from .seq import Seq, as_seq


def _zero_like(values) -> Scalar:
    return 0.0 if mode_of(*values) is Mode.FLOAT else Fraction(0)


@dataclass(frozen=True, eq=False)
class StepFn:
    cells: tuple

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    @classmethod
    def of(cls, values: Iterable) -> "StepFn":
        return cls(Seq.of(values).values)

    @classmethod
    def from_seq(cls, x) -> "StepFn":
        return cls(as_seq(x).values)

    @property
    def mode(self) -> Mode:
        return mode_of(*self.cells)

    def zero(self) -> Scalar:
        return _zero_like(self.cells)

    def __len__(self):
        return len(self.cells)

    def support_len(self) -> int:
        return Seq(self.cells).support_len()

    def value(self, t) -> Scalar:
        """``f(t)``; cells are closed on the left."""
        if t < 0:
            raise ValueError("t must be >= 0")
        if t == INF:
            return self.zero()
        n = math.floor(t)
        return self.cells[n] if n < len(self.cells) else self.zero()

    def to_seq(self) -> Seq:
        return Seq(self.cells)

    def trimmed(self) -> "StepFn":
        return StepFn(self.cells[: self.support_len()])

    def __eq__(self, other):
        if not isinstance(other, StepFn):
            return NotImplemented
        return self.trimmed().cells == other.trimmed().cells

    def __hash__(self):
        return hash(self.trimmed().cells)

    def __repr__(self):
        return "StepFn(" + ", ".join(str(v) for v in self.cells) + ")"

    def scaled(self, c) -> "StepFn":
        return StepFn(tuple(c * v for v in self.cells))

    def to_float(self) -> "StepFn":
        return StepFn(tuple(float(v) for v in self.cells))

    def rearranged(self) -> "StepFn":
        """Nonincreasing rearrangement of ``|f|``, computed from the distribution function."""
        prof = Profile.from_stepfn(self).rearranged()
        return prof.to_stepfn(len(self.cells))

    def masked(self, mask: IntervalSet) -> "StepFn | Profile":
        """``f * chi_mask``; a StepFn when every finite mask endpoint is an integer."""
        prof = Profile.from_stepfn(self).masked(mask)
        if all(_int_or_inf(iv.lo) and _int_or_inf(iv.hi) for iv in mask):
            return prof.to_stepfn(len(self.cells))
        return prof


def _int_or_inf(v) -> bool:
    return v == INF or (v == math.floor(v))


def step_integral(f: StepFn, a, b) -> Scalar:
    """Exact ``int_a^b f``; ``b`` may be ``inf``."""
    if a < 0 or b < a:
        raise ValueError("need 0 <= a <= b")
    total = f.zero()
    n = len(f.cells)
    hi_cap = n if b == INF else min(b, n)
    k = math.floor(a)
    while k < hi_cap:
        lo = max(a, k)
        hi = min(hi_cap, k + 1)
        if hi > lo:
            total += f.cells[k] * (hi - lo)
        k += 1
    return total


def step_power(f: StepFn, q) -> StepFn:
    """Raise every cell to the power ``q``; cells must be nonnegative."""
    if any(v < 0 for v in f.cells):
        raise NegativeCell("step_power needs nonnegative cells")
    if f.mode is Mode.EXACT and f.cells and not is_integral(q):
        raise ArithmeticModeMismatch(f"q={q} is not an integer; use float mode")
    return StepFn(tuple(power(v, q) for v in f.cells))


@dataclass(frozen=True, eq=False)
class Profile:
    """A step function given by disjoint pieces ``[lo, hi)`` with a value each.

    Stored in canonical form: sorted, zero values and empty pieces dropped,
    touching pieces with equal values merged. Gaps are zero.
    """

    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", _canonical(self.pieces))

    @classmethod
    def from_stepfn(cls, f: StepFn) -> "Profile":
        return cls(tuple((k, k + 1, v) for k, v in enumerate(f.cells)))

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        return "Profile(" + ", ".join(f"[{lo},{hi}):{v}" for lo, hi, v in self.pieces) + ")"

    def end(self):
        return self.pieces[-1][1] if self.pieces else 0

    def value(self, t) -> Scalar:
        for lo, hi, v in self.pieces:
            if lo <= t < hi:
                return v
        return 0

    def breakpoints(self) -> list:
        pts = {0}
        for lo, hi, _ in self.pieces:
            pts.add(lo)
            pts.add(hi)
        return sorted(pts)

    def integral(self, a, b) -> Scalar:
        total = 0
        for lo, hi, v in self.pieces:
            l, h = max(lo, a), min(hi, b)
            if h > l:
                total += v * (h - l)
        return total

    def power(self, q) -> "Profile":
        return Profile(tuple((lo, hi, power(v, q)) for lo, hi, v in self.pieces))

    def masked(self, mask: IntervalSet) -> "Profile":
        out = []
        for lo, hi, v in self.pieces:
            for iv in mask:
                l, h = max(lo, iv.lo), min(hi, iv.hi)
                if h > l:
                    out.append((l, h, v))
        return Profile(tuple(out))

    def rearranged(self) -> "Profile":
        """Generic nonincreasing rearrangement via ``m(s) = |{f > s}|``.

        For distinct values ``v_1 > v_2 > ...`` the rearrangement equals ``v_k``
        on ``[m(v_{k-1}), m(v_k))`` where ``m(v_0) = 0``.
        """
        absd = [(lo, hi, abs(v)) for lo, hi, v in self.pieces]
        levels = sorted({v for _, _, v in absd}, reverse=True)
        out = []
        start = 0
        for v in levels:
            # measure of {|f| >= v}, i.e. of {|f| > next lower level}
            m = sum((hi - lo for lo, hi, w in absd if w >= v), Fraction(0) if _exact(self) else 0.0)
            out.append((start, m, v))
            start = m
        return Profile(tuple(out))

    def is_integer_grid(self) -> bool:
        return all(_int_or_inf(lo) and _int_or_inf(hi) for lo, hi, _ in self.pieces)

    def to_stepfn(self, min_len: int = 0) -> StepFn:
        if not self.is_integer_grid():
            raise ValueError("profile has non-integer breakpoints")
        n = max(min_len, int(self.end()))
        z = Fraction(0) if _exact(self) else 0.0
        cells = [z] * n
        for lo, hi, v in self.pieces:
            for k in range(int(lo), int(hi)):
                cells[k] = v
        return StepFn(tuple(cells))


def _exact(p: Profile) -> bool:
    return mode_of(*(v for _, _, v in p.pieces)) is Mode.EXACT


def _canonical(pieces) -> tuple:
    items = sorted((lo, hi, v) for lo, hi, v in pieces if hi > lo and v != 0)
    out: list = []
    for lo, hi, v in items:
        if out and out[-1][1] == lo and out[-1][2] == v:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return tuple(out)


def profile_of(values: Iterable) -> Profile:
    """Profile of a sequence of cell values (convenience for tests)."""
    return Profile.from_stepfn(StepFn(tuple(parse_scalar(v) for v in values)))

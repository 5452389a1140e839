"""Continuous piecewise affine functions with integer breakpoints and their positivity sets."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .intervals import Interval, IntervalSet
from .scalar import INF, TAU, Scalar, scale


@dataclass(frozen=True)
class PiecewiseAffine:
    """``p(n) = values[n]`` for ``n = 0..N``, affine on each ``[n, n+1]``, constant after ``N``."""

    values: tuple

    def __post_init__(self):
        if not self.values:
            object.__setattr__(self, "values", (Fraction(0),))
        else:
            object.__setattr__(self, "values", tuple(self.values))

    @property
    def last(self) -> int:
        return len(self.values) - 1

    def __call__(self, t) -> Scalar:
        if t < 0:
            raise ValueError("t must be >= 0")
        if t >= self.last:
            return self.values[-1]
        k = math.floor(t)
        v0, v1 = self.values[k], self.values[k + 1]
        return v0 + (v1 - v0) * (t - k)

    def slopes(self) -> tuple:
        v = self.values
        return tuple(v[k + 1] - v[k] for k in range(len(v) - 1))

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values)


def _positive(v, exact: bool, tol: float) -> bool:
    if exact:
        return v > 0
    return float(v) > tol


def affine_region(p: PiecewiseAffine, relation: str = ">0", tol: float = TAU) -> IntervalSet:
    """The set ``{t >= 0 : p(t) > 0}``.

    Each cell is affine, so its positive part is the whole cell, nothing, or the
    side of the single root where the endpoint is positive. In float mode values
    with ``|v| <= tol * scale`` count as zero.
    """
    if relation != ">0":
        raise ValueError("only the relation '>0' is supported")
    exact = p.exact
    ftol = tol * scale(*p.values) if not exact else 0.0
    out = []
    vals = p.values
    for k in range(len(vals) - 1):
        v0, v1 = vals[k], vals[k + 1]
        s0, s1 = _positive(v0, exact, ftol), _positive(v1, exact, ftol)
        if s0 and s1:
            out.append(Interval(k, k + 1, False, False))
        elif s0:
            out.append(Interval(k, _root(k, v0, v1, exact, ftol), False, True))
        elif s1:
            out.append(Interval(_root(k, v0, v1, exact, ftol), k + 1, True, False))
    if _positive(vals[-1], exact, ftol):
        out.append(Interval(len(vals) - 1, INF, False, True))
    return IntervalSet(out)


def _root(k, v0, v1, exact, ftol):
    # one endpoint positive, the other <= 0 (or within tolerance of 0)
    if exact:
        return k + Fraction(v0) / (v0 - v1)
    a, b = float(v0), float(v1)
    if abs(a) <= ftol:
        return float(k)
    if abs(b) <= ftol:
        return float(k + 1)
    return k + a / (a - b)

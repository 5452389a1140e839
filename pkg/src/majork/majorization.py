"""Partial-sum domination predicates on sequences.

All quantifiers over ``N`` are decided by checking ``N`` up to the longest
support, since every later head (and tail) sum is constant.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Optional

from .core.scalar import TAU, Mode, eq, le, power, root
from .core.seq import Seq, as_seq, coerce, power_cells, rearrange
from .errors import PremiseViolated


@dataclass(frozen=True)
class Check:
    holds: bool
    first_violation: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {"holds": self.holds, "first_violation": self.first_violation, "reason": self.reason}


def _pair(u, v):
    u, v = coerce(as_seq(u), as_seq(v))
    n = max(len(u), len(v), 1)
    return u.padded(n), v.padded(n), n


def _heads(cells):
    return list(accumulate(cells))


def _tails(cells):
    # tails[m-1] = sum over n >= m
    return list(accumulate(reversed(cells)))[::-1]


def check_sq_premise(u, v, q, tol: float = TAU) -> Check:
    """Head ``q``-power sums of ``u*`` dominated by those of ``v*``, with equal totals."""
    u, v, n = _pair(u, v)
    hu, hv = _heads(power_cells(u, q)), _heads(power_cells(v, q))
    for m in range(n):
        if not le(hu[m], hv[m], tol):
            return Check(False, m + 1, "head")
    if not eq(hu[-1], hv[-1], tol):
        return Check(False, n, "total")
    return Check(True)


def _tail_violation(small, big, q, tol):
    """First 1-based ``M`` with ``sum_{n>=M} small*^q > sum_{n>=M} big*^q``."""
    small, big, n = _pair(small, big)
    ts, tb = _tails(power_cells(small, q)), _tails(power_cells(big, q))
    for m in range(n):
        if not le(ts[m], tb[m], tol):
            return m + 1
    return None


def head_to_tail(u, v, q, tol: float = TAU) -> bool:
    """Given the premise for ``(u, v)``, check ``v``'s tail sums are dominated by ``u``'s."""
    prem = check_sq_premise(u, v, q, tol)
    if not prem:
        raise PremiseViolated("premise S_q fails", witness=prem.first_violation)
    return _tail_violation(v, u, q, tol) is None


def hlp_violation(x, y, tol: float = TAU) -> Optional[int]:
    """First ``m`` with ``sum_{n<=m} y*_n > sum_{n<=m} x*_n``, or None."""
    x, y, n = _pair(x, y)
    hx, hy = _heads(rearrange(x).values), _heads(rearrange(y).values)
    for m in range(n):
        if not le(hy[m], hx[m], tol):
            return m + 1
    return None


def check_hlp(x, y, tol: float = TAU) -> bool:
    """Weak majorization of ``y`` by ``x``: every head sum of ``y*`` is at most that of ``x*``."""
    return hlp_violation(x, y, tol) is None


def check_tail_dom(u, y, q, tol: float = TAU) -> bool:
    """``sum_{n>=N} (y*_n)^q <= sum_{n>=N} (u*_n)^q`` for every ``N``."""
    return _tail_violation(y, u, q, tol) is None


@dataclass(frozen=True)
class Completion:
    z: Seq
    index: int
    downgraded: bool


def cap_completion(u, y, q, tol: float = TAU) -> Completion:
    """Raise the largest entry of ``|y|`` so that the total ``q``-power matches ``u``.

    Returns ``z`` with ``z_n = |y_n|`` except at the first index ``n1`` of
    maximal ``|y_n|``. If the required root is irrational in exact mode the
    result is returned in float mode and ``downgraded`` is set.
    """
    u, y, _ = _pair(u, y)
    w = _tail_violation(y, u, q, tol)
    if w is not None:
        raise PremiseViolated("tail domination fails", witness=w)
    ya = y.abs()
    n1 = max(range(len(ya)), key=lambda i: (ya[i], -i))
    zero = ya._zero()
    total_u = sum(power_cells(u, q), zero)
    rest = sum((power(v, q) for i, v in enumerate(ya.values) if i != n1), zero)
    # tail domination at N=1 gives total_u >= sum |y|^q, so need >= |y_n1|^q >= 0
    val, exact = root(max(total_u - rest, zero), q)
    downgraded = ya.mode is Mode.EXACT and not exact
    vals = [float(v) for v in ya.values] if downgraded else list(ya.values)
    vals[n1] = val
    return Completion(Seq(tuple(vals)), n1 + 1, downgraded)

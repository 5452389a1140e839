"""K-functionals for the couples (l1, l_inf) and (l1, l_q).

For (l1, l_inf) the K-functional is the integral of the rearrangement, so it
is computed exactly. For (l1, l_q) we solve the minimization
``min_z |x - z|_1 + t |z|_q`` exactly up to float rounding: the optimal ``z``
clips ``x*`` at some level ``c``, which reduces the problem to one variable.
A dual vector gives a matching lower bound, and Holmstedt's two-term
functional ``J`` sandwiches the result within the factor ``C(q)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .core.scalar import TAU, Scalar, is_integral, rational_upper, root
from .core.seq import Seq, as_seq, rearrange
from .core.stepfn import StepFn, step_integral
from .errors import NoConvergence


def k_l1_linf(t, x) -> Scalar:
    """``K(t, x; l1, l_inf) = int_0^t x*``; piecewise affine with integer breakpoints."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return step_integral(StepFn.from_seq(rearrange(x)), 0, t)


def _c_q_branches(q: float) -> tuple[float, float]:
    return 1 + 2 * (q - 1) ** (-1 / q), 2 ** (1 / q) + (1 - 1 / q) ** (-1 / q)


def c_q_bound(q) -> float:
    """``C(q) = max{1 + 2(q-1)^{-1/q}, 2^{1/q} + (1-1/q)^{-1/q}}``; ``C(2) = 3``."""
    q = float(q)
    if q <= 1:
        raise ValueError("q must be > 1")
    return max(_c_q_branches(q))


def c_q_rational(q) -> Fraction:
    """A rational number ``>= C(q)``, equal to it whenever that is rational and detectably the max.

    Exact pipelines need a rational constant; rounding up keeps every bound valid.
    """
    if is_integral(q):
        k = int(q)
        first, exact = root(Fraction(1, k - 1), k)
        a, b = _c_q_branches(float(q))
        if exact and a - b > 1e-9:
            return 1 + 2 * first
    return rational_upper(c_q_bound(q))


@dataclass(frozen=True)
class HolmstedtParams:
    q: Scalar
    alpha: float = field(init=False)
    c_q: float = field(init=False)

    def __post_init__(self):
        if self.q <= 1:
            raise ValueError("q must be > 1")
        object.__setattr__(self, "alpha", float(self.q) / (float(self.q) - 1))
        object.__setattr__(self, "c_q", c_q_bound(self.q))


def holmstedt_J(t, x, params: HolmstedtParams | Scalar) -> float:
    """``int_0^{t^a} phi + t (int_{t^a}^inf phi^q)^{1/q}`` with ``phi = x*`` and ``a = q/(q-1)``."""
    if not isinstance(params, HolmstedtParams):
        params = HolmstedtParams(params)
    t = float(t)
    if t <= 0:
        raise ValueError("t must be > 0")
    q = float(params.q)
    xs = np.asarray([float(v) for v in rearrange(x).values], dtype=float)
    if xs.size == 0:
        return 0.0
    s = t ** params.alpha
    n = xs.size
    k = min(int(math.floor(s)), n)
    frac = s - k if k < n else 0.0
    head = xs[:k].sum() + (frac * xs[k] if k < n else 0.0)
    if k < n:
        tail = (1 - frac) * xs[k] ** q + (xs[k + 1:] ** q).sum()
    else:
        tail = 0.0
    return float(head + t * tail ** (1 / q))


@dataclass(frozen=True)
class KValue:
    """``value`` is attained by an explicit ``z``; ``dual`` is a certified lower bound.

    ``lower``/``upper`` are the Holmstedt sandwich ``J / C(q)`` and ``J``.
    """

    value: float
    dual: float
    lower: float
    upper: float
    level: float

    def to_json(self):
        return {"value": self.value, "lower": self.lower, "upper": self.upper,
                "dual": self.dual, "level": self.level}


def _qnorm_rows(z: np.ndarray, q: float) -> np.ndarray:
    """Row-wise q-norms, scaled by the row maximum so tiny entries do not underflow."""
    m = z.max(axis=1)
    safe = np.where(m > 0, m, 1.0)
    return m * ((z / safe[:, None]) ** q).sum(axis=1) ** (1 / q)


def _objective(xs: np.ndarray, c: np.ndarray, t: float, q: float) -> np.ndarray:
    z = np.minimum(xs[None, :], c[:, None])
    return (xs[None, :] - z).sum(axis=1) + t * _qnorm_rows(z, q)


def _clip_levels(xs: np.ndarray, t: float, q: float) -> np.ndarray:
    """Candidate clipping levels: segment endpoints plus the interior stationary points.

    With the top ``k`` coordinates clipped at ``c`` and ``S`` the sum of the
    remaining ``x^q``, the objective is ``P_k - k c + t (k c^q + S)^{1/q}``,
    stationary at ``c^q (t^a - k) = S``.
    """
    n = xs.size
    ta = t ** (q / (q - 1))
    # log of suffix[k] = sum_{i>=k} x_i^q, kept in log space against underflow
    logs = np.logaddexp.accumulate(q * np.log(xs[::-1]))[::-1]
    logsuffix = np.append(logs, -np.inf)
    cands = [np.append(xs, 0.0)]
    ks = np.arange(1, n + 1)
    ok = ta > ks
    if ok.any():
        kk = ks[ok]
        c = np.exp((logsuffix[kk] - np.log(ta - kk)) / q)
        lo = np.where(kk < n, xs[np.minimum(kk, n - 1)], 0.0)
        hi = xs[kk - 1]
        cands.append(np.clip(c, lo, hi))
    return np.concatenate(cands)


def _dual_bound(xs: np.ndarray, c: float, t: float, q: float) -> float:
    """``<x, w> / max(|w|_inf, |w|_{q'} / t)`` for the gradient of ``t|z|_q`` at ``z = min(x, c)``."""
    qp = q / (q - 1)
    best = xs.sum() / max(1.0, np.count_nonzero(xs) ** (1 / qp) / t)
    z = np.minimum(xs, c)
    if z.max() > 0:
        z = z / z.max()  # w only depends on the direction of z; this avoids underflow in z^q
        nz = float(((z ** q).sum()) ** (1 / q))
        w = t * (z / nz) ** (q - 1)
        scale_ = max(w.max(), float(((w ** qp).sum()) ** (1 / qp)) / t)
        best = max(best, float(xs @ w) / scale_)
    return float(best)


def k_l1_lq(t, x, q, tol: float = 1e-9) -> KValue:
    """``K(t, x; l1, l_q)`` with a primal value, a dual lower bound and the Holmstedt sandwich.

    Raises :class:`NoConvergence` if the primal/dual gap exceeds ``tol`` (relative)
    or the value falls outside ``[J/C(q), J]`` by more than ``tol``.
    """
    t, qf = float(t), float(q)
    if t <= 0 or qf <= 1:
        raise ValueError("need t > 0 and q > 1")
    xs = np.sort(np.abs(np.asarray([float(v) for v in as_seq(x).values], dtype=float)))[::-1]
    xs = xs[xs > 0]
    params = HolmstedtParams(q)
    if xs.size == 0:
        return KValue(0.0, 0.0, 0.0, 0.0, 0.0)
    cands = _clip_levels(xs, t, qf)
    vals = _objective(xs, cands, t, qf)
    i = int(np.argmin(vals))
    value, level = float(vals[i]), float(cands[i])
    # near-ties in the primal can sit at a level whose gradient certifies poorly;
    # every level gives a valid dual bound, so take the best among the near-minimal ones
    near = np.flatnonzero(vals <= value * (1 + 1e-12) + 1e-300)
    dual = max(_dual_bound(xs, float(cands[j]), t, qf) for j in near)
    J = holmstedt_J(t, Seq(tuple(xs)), params)
    lower = J / params.c_q
    slack = tol * max(1.0, value)
    if value - dual > slack:
        raise NoConvergence(f"duality gap {value - dual:.3e} exceeds tolerance")
    if value > J + slack or value < lower - slack:
        raise NoConvergence(f"value {value} outside the sandwich [{lower}, {J}]")
    return KValue(value, dual, lower, J, level)


def default_grid(*seqs: Seq) -> list:
    n = max((as_seq(s).support_len() for s in seqs), default=0)
    pts = {2.0 ** k for k in range(-10, 11)} | {float(m) for m in range(1, n + 1)}
    return sorted(pts)


def k_dominates(x, y, couple: str = "1,inf", q=None, grid: Optional[Iterable] = None,
                tol: float = TAU) -> Optional[bool]:
    """Is ``K(t, y) <= K(t, x)`` for every ``t``?

    ``couple="1,inf"``: exact decision from the integer breakpoints.
    ``couple="1,q"``: decided on ``grid`` using certified intervals ``[dual, value]``;
    returns None when the intervals overlap without a verdict.
    """
    x, y = as_seq(x), as_seq(y)
    if couple in ("1,inf", "1,∞"):
        from .majorization import check_hlp
        return check_hlp(x, y, tol)
    if couple != "1,q":
        raise ValueError(f"unknown couple {couple!r}")
    if q is None:
        raise ValueError("couple (1,q) needs q")
    if y.is_zero():
        return True
    pts = list(grid) if grid is not None else default_grid(x, y)
    if not pts:
        raise ValueError("grid must be nonempty")
    undecided = False
    for t in pts:
        kx, ky = k_l1_lq(t, x, q), k_l1_lq(t, y, q)
        if ky.dual > kx.value * (1 + tol):
            return False
        if ky.value > kx.dual * (1 + tol):
            undecided = True
    return None if undecided else True

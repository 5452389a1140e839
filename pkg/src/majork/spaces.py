"""Concrete sequence spaces: l^p, weak l^p and its separable part.

The weak l^p norm used here is ``sup_m m^{1/p - 1} sum_{n<=m} x*_n``. For a
finitely supported sequence every sup is a max over the support.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

import numpy as np

from .core.scalar import Scalar, is_integral, parse_scalar, power, root
from .core.seq import Seq, as_seq, rearrange
from .majorization import check_sq_premise

KINDS = ("lp", "weak_lp", "weak_lp_separable")


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    p: Scalar = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.p < 1 or (self.kind != "lp" and self.p <= 1):
            raise ValueError(f"bad exponent p={self.p} for {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "SpaceSpec":
        """``l1``, ``l<p>``, ``lp:<p>``, ``weak-lp:<p>`` or ``weak-lp-sep:<p>``."""
        t = text.strip().lower()
        if ":" in t:
            name, p = t.split(":", 1)
            kind = {"lp": "lp", "weak-lp": "weak_lp", "weak-lp-sep": "weak_lp_separable"}.get(name)
            if kind is None:
                raise ValueError(f"unknown space {text!r}")
            return cls(kind, parse_scalar(p))
        if t.startswith("l") and t[1:]:
            return cls("lp", parse_scalar(t[1:]))
        raise ValueError(f"unknown space {text!r}")

    def __str__(self):
        name = {"lp": "lp", "weak_lp": "weak-lp", "weak_lp_separable": "weak-lp-sep"}[self.kind]
        return f"{name}:{self.p}"


def as_space(E) -> SpaceSpec:
    return E if isinstance(E, SpaceSpec) else SpaceSpec.parse(str(E))


def space_norm(E, x) -> Scalar:
    """Exact when the value is rational and the input is exact, otherwise a float."""
    E = as_space(E)
    xs = rearrange(as_seq(x)).trimmed()
    if not xs.values:
        return Fraction(0) if xs.exact else 0.0
    if E.kind == "lp":
        if not is_integral(E.p):
            xs = xs.to_float()
        total = sum((power(v, E.p) for v in xs.values), xs._zero())
        return root(total, E.p)[0]
    e = 1 / float(E.p) - 1
    heads = np.cumsum([float(v) for v in xs.values])
    m = np.arange(1, heads.size + 1, dtype=float)
    return float(np.max(m ** e * heads))


def weak_profile(x_star: np.ndarray, p) -> np.ndarray:
    """``m^{1/p - 1} sum_{n<=m} x*_n`` for ``m = 1..len``; the input must be nonincreasing."""
    m = np.arange(1, x_star.size + 1, dtype=float)
    return m ** (1 / float(p) - 1) * np.cumsum(x_star)


@dataclass(frozen=True)
class WFPResult:
    sup_truncated: float
    full_in_E: bool
    ratio: float
    limit_estimate: float

    def to_json(self):
        return {"sup_truncated": self.sup_truncated, "full_in_E": self.full_in_E,
                "ratio": self.ratio, "limit_estimate": self.limit_estimate}


def wfp_probe(E, x: Union[Seq, Callable[[np.ndarray], np.ndarray]], N_max: int,
              sep_tol: float = 1e-3) -> WFPResult:
    """Sup of the norms of the truncations ``(x_1, ..., x_N, 0, ...)`` for ``N <= N_max``.

    ``x`` is a finite Seq or a vectorized map ``n -> x_n`` (1-based) giving a
    nonnegative nonincreasing sequence. For a finite Seq the full sequence is
    in ``E`` and ``ratio`` is exactly 1. For a generated sequence l^p and weak
    l^p contain the limit whenever the truncated norms stay bounded (their
    norms are monotone limits), so ``ratio = 1``; for the separable part the
    limit ``m^{1/p - 1} sum x*`` evaluated at ``N_max`` must be below
    ``sep_tol`` times the sup, otherwise the sequence is reported outside
    ``E`` with ``ratio = inf``.
    """
    E = as_space(E)
    if isinstance(x, Seq) or not callable(x):
        s = as_seq(x)
        if any(v < 0 for v in s.values):
            raise ValueError("wfp_probe needs a nonnegative sequence")
        full = float(space_norm(E, s))
        sup = max((float(space_norm(E, Seq(s.values[:N]))) for N in range(1, min(len(s), N_max) + 1)),
                  default=0.0)
        return WFPResult(sup, True, full / sup if sup else 1.0, 0.0)
    vals = np.asarray(x(np.arange(1, N_max + 1, dtype=float)), dtype=float)
    if np.any(vals < 0) or np.any(np.diff(vals) > 0):
        raise ValueError("generated sequence must be nonnegative and nonincreasing")
    if E.kind == "lp":
        p = float(E.p)
        sup = float(np.sum(vals ** p) ** (1 / p))
        return WFPResult(sup, True, 1.0, 0.0)
    prof = weak_profile(vals, E.p)
    sup = float(prof.max())
    limit = float(prof[-1])
    if E.kind == "weak_lp":
        return WFPResult(sup, True, 1.0, limit)
    inside = limit <= sep_tol * sup
    return WFPResult(sup, inside, 1.0 if inside else math.inf, limit)


# ---------------------------------------------------------------- S_q probe


def _concentrate(u_star: list, q: float, rng: random.Random, moves: int) -> list:
    """Move ``q``-power mass toward earlier coordinates; heads grow, the total is kept."""
    w = [v ** q for v in u_star]
    n = len(w)
    for _ in range(moves):
        if n < 2:
            break
        i, j = sorted(rng.sample(range(n), 2))
        d = rng.random() * w[j]
        w[i] += d
        w[j] -= d
    w.sort(reverse=True)
    return [v ** (1 / q) for v in w]


def premise_pair(rng: random.Random, q, n_max: int = 16) -> tuple:
    """A random pair ``(u*, v*)`` satisfying the head/total ``q``-power premise."""
    n = rng.randint(1, n_max)
    u = sorted((rng.random() for _ in range(n)), reverse=True)
    v = _concentrate(u, float(q), rng, rng.randint(0, 3 * n))
    return Seq(tuple(u)), Seq(tuple(v))


@dataclass(frozen=True)
class SqProbeResult:
    violations: list
    trials: int
    max_ratio: float

    def to_json(self):
        return {"violations": self.violations, "trials": self.trials, "max_ratio": self.max_ratio}


def sq_probe(E, q, C, trials: int = 1000, seed: int = 0, n_max: int = 16,
             tol: float = 1e-9) -> SqProbeResult:
    """Search premise pairs ``(u, v)`` for ``|v|_E > C |u|_E``.

    ``E`` is a SpaceSpec (or its text form) or any callable norm, which lets
    tests plug in spaces outside the registry.
    """
    if float(q) <= 1 or C < 1:
        raise ValueError("need q > 1 and C >= 1")
    norm = E if callable(E) and not isinstance(E, SpaceSpec) else (lambda s, E=as_space(E): space_norm(E, s))
    violations = []
    max_ratio = 0.0
    for k in range(trials):
        rng = random.Random(f"{seed}:{k}")
        u, v = premise_pair(rng, q, n_max)
        prem = check_sq_premise(u, v, q, 1e-9)
        if not prem:
            raise AssertionError(f"sampler produced a non-premise pair at trial {k}")
        nu, nv = float(norm(u)), float(norm(v))
        if nu > 0:
            max_ratio = max(max_ratio, nv / nu)
        if nv > C * nu * (1 + tol) + tol:
            violations.append({"trial": k, "u": [float(a) for a in u.values],
                               "v": [float(a) for a in v.values], "norm_u": nu, "norm_v": nv})
    return SqProbeResult(violations, trials, max_ratio)

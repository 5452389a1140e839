"""Seeded generators of exact test inputs.

Every generator takes a :class:`random.Random` so suites are reproducible
from a single seed. Sequences use small-denominator Fractions.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import accumulate

from .core.seq import Seq, rearrange
from .core.stepfn import StepFn
from .errors import PremiseViolated
from .kfunc import c_q_rational
from .operators import (ConvexCombo, Composition, Diagonal, SignedPermutation, Truncation,
                        apply)


def rand_fraction(rng: random.Random, hi: int = 8, den: int = 4, signed: bool = True) -> Fraction:
    v = Fraction(rng.randint(0, hi * den), rng.randint(1, den))
    return -v if signed and rng.random() < 0.5 else v


def rand_seq(rng: random.Random, n_max: int = 16, signed: bool = True, zero_rate: float = 0.2) -> Seq:
    n = rng.randint(1, n_max)
    return Seq(tuple(Fraction(0) if rng.random() < zero_rate else rand_fraction(rng, signed=signed)
                     for _ in range(n)))


def rand_nonincreasing_int(rng: random.Random, n_max: int, top: int = 12) -> list:
    n = rng.randint(1, n_max)
    return sorted((rng.randint(0, top) for _ in range(n)), reverse=True)


def rand_signed_perm(rng: random.Random, n: int, partial: bool = False) -> SignedPermutation:
    src = list(range(n))
    rng.shuffle(src)
    if partial:
        src = [s if rng.random() < 0.8 else -1 for s in src]
    return SignedPermutation(tuple(src), tuple(rng.choice((1, -1)) for _ in range(n)))


def rand_convex_combo(rng: random.Random, n: int, k_max: int = 4) -> ConvexCombo:
    k = rng.randint(1, k_max)
    raw = [rng.randint(1, 6) for _ in range(k)]
    tot = sum(raw)
    return ConvexCombo(tuple((Fraction(r, tot), rand_signed_perm(rng, n, rng.random() < 0.3))
                             for r in raw))


def rand_contraction(rng: random.Random, n: int, depth: int = 3):
    """A composition of operators, each of norm at most 1 on every l^r."""
    ops = []
    for _ in range(rng.randint(1, depth)):
        kind = rng.random()
        if kind < 0.55:
            ops.append(rand_convex_combo(rng, n))
        elif kind < 0.85:
            ops.append(Diagonal(tuple(Fraction(rng.randint(-4, 4), 4) for _ in range(n))))
        else:
            ops.append(Truncation(rng.randint(0, n), n))
    return Composition(tuple(ops))


def k_dominated_pair(rng: random.Random, n_max: int = 16) -> tuple:
    """``(x, y, T)`` with ``y = T x`` for a contraction ``T``.

    ``T`` has norm at most 1 on both ends of every couple of l^r spaces, so
    ``K(t, y) <= K(t, x)`` for the couples (l1, l_inf) and (l1, l_q).
    """
    x = rand_seq(rng, n_max)
    if rng.random() < 0.05:
        return x, Seq.zeros(len(x)), Truncation(0, len(x))
    if rng.random() < 0.05:
        return x, x, Composition(())
    T = rand_contraction(rng, len(x))
    return x, apply(T, x), T


def _scale_to_boundary(x: Seq, y: Seq) -> Seq:
    """Largest multiple ``c y`` (``c <= 1``) whose head sums stay below those of ``x``."""
    hx = list(accumulate(rearrange(x).values))
    hy = list(accumulate(rearrange(y).values))
    n = max(len(hx), len(hy))
    hx += [hx[-1]] * (n - len(hx))
    hy += [hy[-1]] * (n - len(hy))
    ratios = [a / b for a, b in zip(hx, hy) if b > 0]
    c = min([Fraction(1)] + ratios)
    return Seq(tuple(c * v for v in y.values))


def hlp_pair(rng: random.Random, n_max: int = 16) -> tuple:
    """A pair ``(x, y)`` with ``y`` weakly majorized by ``x``.

    Mixes contraction images, permuted and sign-flipped copies, and random
    sequences scaled until a head sum is tight.
    """
    r = rng.random()
    x = rand_seq(rng, n_max)
    n = len(x)
    if r < 0.4:
        return x, apply(rand_contraction(rng, n), x)
    if r < 0.55:
        return x, apply(rand_signed_perm(rng, n), x)
    m = rng.randint(1, n_max)
    y = rand_seq(rng, m)
    if all(v == 0 for v in y.values):
        return x, y
    return x, _scale_to_boundary(x, y)


def premise_fg(rng: random.Random, q, n_max: int = 48, pipeline_rate: float = 0.3,
               max_tries: int = 200) -> tuple:
    """Nonincreasing step functions ``(f, g)`` for which ``A`` and ``B`` cover ``[0, inf)``.

    A share of the pairs come from the construction ``f = (1 + eps) C(q) x*``,
    ``g = (T x)*``; the rest are random integer profiles kept only when the
    covering condition holds, which produces many more intermediate steps.
    """
    from .procp import DEFAULT_EPS, compute_regions

    if rng.random() < pipeline_rate:
        while True:
            x, y, _ = k_dominated_pair(rng, n_max)
            if not y.is_zero():
                break
        g = StepFn(rearrange(y).values)
        f = StepFn(rearrange(x).values).scaled((1 + DEFAULT_EPS) * c_q_rational(q))
        return f, g
    for _ in range(max_tries):
        if rng.random() < 0.6:
            f, g = staircase_pair(rng, n_max)
        else:
            f = rand_nonincreasing_int(rng, n_max)
            g = rand_nonincreasing_int(rng, n_max)
            if rng.random() < 0.5:
                f = [f[0] * rng.randint(1, 3) + rng.randint(0, 8)] + f[1:]
        if not any(g):
            continue
        F, G = StepFn(tuple(Fraction(v) for v in f)), StepFn(tuple(Fraction(v) for v in g))
        try:
            compute_regions(F, G, q)
        except PremiseViolated:
            continue
        return F, G
    raise RuntimeError("no premise-satisfying pair found")


def staircase_pair(rng: random.Random, n_max: int = 48) -> tuple:
    """Integer profiles where ``f`` has a spike and long plateaus and ``g`` steps just above them.

    This shape makes the head inequality fail and recover several times,
    which is what drives the procedure through more than one step.
    """
    k = rng.randint(1, 5)
    F = sorted(rng.sample(range(1, 30), k + 1), reverse=True)
    f = [F[0] + rng.randint(0, 30)] * rng.randint(1, 2)
    g: list = []
    for i in range(1, k + 1):
        L = rng.randint(2, 10)
        f += [F[i]] * L
        hi = F[i - 1] if i > 1 else F[0]
        g += [rng.randint(F[i] + 1, max(F[i] + 1, hi))] * rng.randint(1, L)
        lo = F[i + 1] if i < k else 0
        if rng.random() < 0.7:
            g += [rng.randint(lo, F[i])] * rng.randint(0, L)
    return f[:n_max], sorted(g, reverse=True)[:n_max]

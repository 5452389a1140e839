import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fseqs
from majork.core import Seq
from majork.generators import k_dominated_pair
from majork.kfunc import (HolmstedtParams, c_q_bound, c_q_rational, default_grid, holmstedt_J,
                          k_dominates, k_l1_linf, k_l1_lq)

# Values of min_z |x - z|_1 + t |z|_q computed with cvxpy (CLARABEL, gap tolerance 1e-12).
CVXPY_ORACLE = [
    ((1, 1), 2, 1.0, 1.414213562373234),
    ((3, 2, 1), 2, 0.7, 2.619160170743229),
    ((3, 2, 1), 3, 1.3, 4.279133335180038),
    ((5, 1, 1, 1), 1.5, 2.0, 8.000000000000426),
    ((4, -2, 1, 0, 3), 2, 0.25, 1.3693063937629317),
    ((2, 2, 2, 2), 3, 1.7, 5.397163576691887),
]


def test_k_l1_linf_examples():
    x = Seq.of((3, 1, 2))
    assert k_l1_linf(2, x) == 5
    assert k_l1_linf(Fraction(3, 2), x) == 4
    assert k_l1_linf(0, x) == 0
    assert k_l1_linf(10, x) == 6


@given(fseqs(min_size=1))
def test_k_l1_linf_concave_nondecreasing(vals):
    x = Seq.of(vals)
    ts = [Fraction(k, 3) for k in range(3 * len(vals) + 4)]
    ks = [k_l1_linf(t, x) for t in ts]
    assert all(a <= b for a, b in zip(ks, ks[1:]))
    assert all(2 * ks[i] >= ks[i - 1] + ks[i + 1] for i in range(1, len(ks) - 1))
    assert ks[-1] == sum(abs(v) for v in vals)


def test_c_q_values():
    assert c_q_bound(2) == 3
    assert c_q_rational(2) == 3
    assert math.isclose(c_q_bound(3), max(1 + 2 * 2 ** (-1 / 3), 2 ** (1 / 3) + 1.5 ** (1 / 3)))
    assert abs(c_q_bound(3) - 2.5874) < 1e-4
    assert c_q_rational(3) >= Fraction(c_q_bound(3))
    assert c_q_bound(1.001) > 1000
    with pytest.raises(ValueError):
        c_q_bound(1)


def test_holmstedt_examples():
    assert holmstedt_J(1, (1,), 2) == 1
    assert holmstedt_J(1, (0, 0), 2) == 0
    assert math.isclose(holmstedt_J(0.5, (1,), 2), 0.25 + 0.5 * math.sqrt(0.75))
    assert HolmstedtParams(3).alpha == 1.5


def test_k_l1_lq_examples():
    assert math.isclose(k_l1_lq(0.5, (1, 0), 2).value, 0.5)
    assert math.isclose(k_l1_lq(2, (1, 0), 2).value, 1)
    kv = k_l1_lq(1, (1, 1), 2)
    J = holmstedt_J(1, (1, 1), 2)
    assert J / 3 - 1e-12 <= kv.value <= J + 1e-12


@pytest.mark.parametrize("x, q, t, expected", CVXPY_ORACLE)
def test_k_l1_lq_matches_frozen_oracle(x, q, t, expected):
    assert math.isclose(k_l1_lq(t, x, q).value, expected, rel_tol=1e-8)


def test_k_l1_lq_matches_live_solver():
    cp = pytest.importorskip("cvxpy")
    rng = np.random.default_rng(3)
    for _ in range(10):
        x = rng.integers(-5, 6, size=rng.integers(1, 9)).astype(float)
        q = float(rng.choice([1.5, 2.0, 3.0]))
        t = float(2.0 ** rng.uniform(-3, 3))
        z = cp.Variable(x.size)
        prob = cp.Problem(cp.Minimize(cp.norm1(x - z) + t * cp.pnorm(z, q)))
        prob.solve(solver=cp.CLARABEL)
        ours = k_l1_lq(t, x, q)
        assert ours.value <= prob.value * (1 + 1e-6) + 1e-9
        assert math.isclose(ours.value, prob.value, rel_tol=1e-5, abs_tol=1e-7)


def test_dual_certificate_is_tight():
    rng = random.Random(0)
    for _ in range(200):
        x = [rng.uniform(-3, 3) for _ in range(rng.randint(1, 20))]
        kv = k_l1_lq(2 ** rng.uniform(-4, 4), x, rng.choice((1.5, 2, 3)))
        assert kv.dual <= kv.value * (1 + 1e-12) + 1e-12
        assert kv.value - kv.dual <= 1e-9 * max(1, kv.value)


def test_k_dominates_examples():
    assert k_dominates((1, 2), (0, 0))
    assert k_dominates((2, 1), (1, 1))
    assert not k_dominates((1, 1), (2, 0))
    assert k_dominates((1, 2), (0,), "1,q", q=2)
    assert k_dominates((3, 1), (1, 1), "1,q", q=2) in (True, None)
    assert k_dominates((1, 1), (5, 0), "1,q", q=2) is False


def test_default_grid():
    g = default_grid(Seq.of((1, 2, 3)))
    assert 2.0 ** -10 in g and 1024.0 in g and 3.0 in g and len(g) == len(set(g))


def test_contractions_give_k_domination():
    for k in range(60):
        x, y, _ = k_dominated_pair(random.Random(k), 8)
        assert k_dominates(x, y)
        assert k_dominates(x, y, "1,q", q=2) in (True, None)


@given(st.lists(st.floats(-4, 4), min_size=1, max_size=8),
       st.sampled_from([1.5, 2.0, 3.0]), st.floats(-6, 6))
def test_sandwich_property(vals, q, logt):
    t = 2.0 ** logt
    kv = k_l1_lq(t, vals, q)
    assert kv.value <= kv.upper * (1 + 1e-9) + 1e-12
    assert kv.upper <= c_q_bound(q) * kv.value * (1 + 1e-9) + 1e-12


def test_dual_certificate_with_negligible_entry():
    # primal near-ties between clipping levels must not weaken the certificate
    kv = k_l1_lq(1.0, [0.125, 9.510172063832953e-156], 1.5)
    assert math.isclose(kv.value, 0.125) and math.isclose(kv.dual, 0.125)
    kv = k_l1_lq(2 ** 0.5, [1.0, 6.951762201880913e-289], 3)
    assert math.isclose(kv.value, 1) and math.isclose(kv.dual, 1)

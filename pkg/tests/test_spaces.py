import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import fseqs
from majork.core import Seq
from majork.majorization import check_sq_premise
from majork.spaces import SpaceSpec, premise_pair, space_norm, sq_probe, wfp_probe


def test_parse_and_str():
    assert SpaceSpec.parse("l1") == SpaceSpec("lp", 1)
    assert SpaceSpec.parse("lp:3/2") == SpaceSpec("lp", Fraction(3, 2))
    assert SpaceSpec.parse("weak-lp:2").kind == "weak_lp"
    assert str(SpaceSpec.parse("weak-lp-sep:2")) == "weak-lp-sep:2"
    for bad in ("weak-lp:1", "lq:2", "foo", "lp:1/2"):
        with pytest.raises(ValueError):
            SpaceSpec.parse(bad)


def test_norm_examples():
    assert math.isclose(space_norm("weak-lp:2", (1, 1)), math.sqrt(2))
    assert space_norm("l1", (1, -2)) == 3
    assert space_norm("l2", (3, 4)) == 5
    assert space_norm("l1", ()) == 0
    assert math.isclose(space_norm("lp:3/2", (1, 1)), 2 ** (2 / 3))
    assert math.isclose(space_norm("weak-lp:2", (4, 1, 1)), 4)


@given(fseqs(min_size=1))
def test_separable_part_agrees_on_finite_support(vals):
    assert space_norm("weak-lp:2", vals) == space_norm("weak-lp-sep:2", vals)


@given(fseqs(min_size=1))
def test_norms_are_symmetric(vals):
    rev = [-v for v in reversed(vals)]
    for E in ("l1", "l2", "weak-lp:3/2"):
        assert space_norm(E, vals) == space_norm(E, rev)


def test_wfp_finite_support():
    r = wfp_probe("weak-lp-sep:2", Seq.of((3, 2, 1)), 10)
    assert r.full_in_E and r.ratio == 1


def test_wfp_geometric_in_l2():
    r = wfp_probe("l2", lambda n: 0.5 ** n, 200)
    assert r.full_in_E and r.ratio == 1
    assert math.isclose(r.sup_truncated, math.sqrt(1 / 3))


def test_wfp_weak_l2_counterexample():
    # x_n = n^{-1/2}: truncations are bounded by 2 in weak l^2, the limit is not separable
    r = wfp_probe("weak-lp-sep:2", lambda n: n ** -0.5, 10 ** 6)
    assert abs(r.sup_truncated - 2) < 0.01 and r.sup_truncated <= 2
    assert not r.full_in_E and r.ratio == math.inf
    w = wfp_probe("weak-lp:2", lambda n: n ** -0.5, 10 ** 4)
    assert w.full_in_E and w.ratio == 1


def test_wfp_rejects_increasing_generator():
    with pytest.raises(ValueError):
        wfp_probe("l2", lambda n: n, 5)


def test_premise_pairs_satisfy_premise():
    for k in range(300):
        rng = random.Random(k)
        q = rng.choice((1.5, 2, 3))
        u, v = premise_pair(rng, q)
        assert check_sq_premise(u, v, q, 1e-9)


@pytest.mark.parametrize("E, q", [("l1", 2), ("lp:3/2", 2), ("l2", 3), ("lp:3/2", 3)])
def test_sq_probe_lp_below_q_has_no_violations(E, q):
    res = sq_probe(E, q, 1, trials=300, seed=1)
    assert res.violations == [] and res.max_ratio <= 1 + 1e-9


def test_sq_probe_catches_linf():
    def linf(s):
        return max((abs(float(v)) for v in s.values), default=0.0)

    res = sq_probe(linf, 2, 1, trials=200, seed=0)
    assert res.violations
    v = res.violations[0]
    assert v["norm_v"] > v["norm_u"]


def test_sq_probe_weak_lp_ratio_below_documented_constant():
    from majork.harness import WEAK_C1

    res = sq_probe("weak-lp:3/2", 2, WEAK_C1, trials=300, seed=2)
    assert not res.violations and res.max_ratio < WEAK_C1


def test_sq_probe_is_deterministic():
    a = sq_probe("l1", 2, 1, trials=50, seed=7)
    b = sq_probe("l1", 2, 1, trials=50, seed=7)
    assert a.max_ratio == b.max_ratio

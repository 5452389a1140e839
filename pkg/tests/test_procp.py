import json
import random
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from majork.core import INF, Interval, IntervalSet, Profile, StepFn
from majork.errors import InvariantViolation, PremiseViolated
from majork.generators import premise_fg
from majork.procp import (O1, O3, PDecomposition, c3_constant, compress_rearrange, compute_regions,
                          generic_rearrange, run_procedure_p, split_functions, theorem_main_pipeline,
                          verify_claim_a, verify_claim_b, verify_decomposition, verify_phis_psis)

CORPUS = Path(__file__).parent / "data" / "procp_multistep.json"

# f has a spike and a long low plateau, g a medium block; worked out by hand:
# int_0^t (f - g) = 0, 3, 2, 1, 0, -1, 0, 1, ... at t = 0, 1, 2, ...
# int_t^inf (f^2 - g^2) = 14, -7, -4, -1, 2, 5, ..., 0 at t = 0, 1, ..., 10
F_TWO_STEP = StepFn.of((5,) + (1,) * 9)
G_TWO_STEP = StepFn.of((2,) * 5)


def co(a, b):
    return IntervalSet.co(a, b)


def test_regions_single_cell():
    reg = compute_regions(StepFn.of((2,)), StepFn.of((1,)), 2)
    assert reg.A == IntervalSet([Interval(0, INF, True, True)])
    assert reg.B == co(0, 1)


def test_regions_two_step_example():
    reg = compute_regions(F_TWO_STEP, G_TWO_STEP, 2)
    assert reg.A == IntervalSet([Interval(0, 4, True, True), Interval(6, INF, True, True)])
    assert reg.B == IntervalSet([Interval(0, Fraction(2, 3)), Interval(Fraction(10, 3), 10, True, True)])


def test_regions_premise_failures():
    with pytest.raises(PremiseViolated):
        compute_regions(StepFn.of((1, 1)), StepFn.of((1, 1)), 2)
    with pytest.raises(PremiseViolated) as e:
        compute_regions(StepFn.of((1,)), StepFn.of((2,)), 2)
    assert e.value.witness == 0
    with pytest.raises(PremiseViolated):
        compute_regions(StepFn.of((1, 2)), StepFn.of((1,)), 2)


def test_single_step_o3_trace_and_split():
    f, g = StepFn.of((2,)), StepFn.of((1,))
    dec = run_procedure_p(f, g, 2)
    assert dec.outcomes == [O3]
    st_ = dec.steps[0]
    assert st_.B_n == co(0, 1) and st_.A_n == IntervalSet.half_line(0)
    assert not st_.Omega_n and not st_.Gamma_n
    sp = split_functions(f, g, dec)
    assert sp.phi1 == f and sp.phi2 == f and sp.phi3 == StepFn.of(())
    assert sp.psi1 == g and sp.psi2 == g and sp.psi3 == StepFn.of(())
    assert verify_phis_psis(sp)


def test_two_step_ledger():
    dec = run_procedure_p(F_TWO_STEP, G_TWO_STEP, 2)
    assert dec.outcomes == [O1, O3]
    s1, s2 = dec.steps
    assert (s1.b_n, s1.b_diamond, s1.a_n, s1.a_tilde) == (Fraction(2, 3), 1, 0, 4)
    assert (s1.a_club, s1.a_diamond, s1.b_club_next) == (0, 4, 5)
    assert s1.A_n == co(0, 4) and s1.B_n == co(0, 1)
    assert s1.Omega_n == co(0, 1) and s1.Gamma_n == co(4, 5)
    assert s2.b_club == 5 and s2.B_n == co(5, 10) and s2.A_n == IntervalSet.half_line(6)
    assert all(dec.checks.values())
    sp = split_functions(F_TWO_STEP, G_TWO_STEP, dec)
    rep = verify_phis_psis(sp)
    assert rep.checks == {"A-stuff": True, "B-stuff": True, "GammaOmega": True}


def test_claims_on_two_step_example():
    reg = compute_regions(F_TWO_STEP, G_TWO_STEP, 2)
    a = verify_claim_a(reg, 0, 4)
    assert a.checks == {"gfaa": True, "gfaaN": True, "diamond_in_B_minus_A": True}
    assert verify_claim_a(reg, 6, INF)
    assert verify_claim_b(reg, 0, Fraction(2, 3))
    assert verify_claim_b(reg, Fraction(10, 3), 10)
    with pytest.raises(InvariantViolation):
        verify_claim_a(reg, 1, 4)
    with pytest.raises(InvariantViolation):
        verify_claim_b(reg, 0, 1)


def test_iteration_cap():
    with pytest.raises(InvariantViolation) as e:
        run_procedure_p(F_TWO_STEP, G_TWO_STEP, 2, max_steps=1)
    assert e.value.clause == "termination"


def test_checker_catches_tampering():
    dec = run_procedure_p(F_TWO_STEP, G_TWO_STEP, 2)
    s1, s2 = dec.steps
    bad = [
        (replace(s1, Gamma_n=IntervalSet()), "(v)"),
        (replace(s1, A_n=co(Fraction(1, 2), 4)), "(i)"),
        (replace(s1, Gamma_n=co(0, 1)), "(iii)"),
    ]
    for step, clause in bad:
        with pytest.raises(InvariantViolation) as e:
            verify_decomposition(PDecomposition(dec.regions, (step, s2)))
        assert e.value.clause == clause
    with pytest.raises(InvariantViolation) as e:
        verify_decomposition(PDecomposition(dec.regions, (s1, replace(s2, B_n=co(5, 6), A_n=IntervalSet.half_line(7)))))
    assert e.value.clause == "UnionIsAll"
    # A-inequality on a block where it fails
    with pytest.raises(InvariantViolation) as e:
        verify_decomposition(PDecomposition(dec.regions, (replace(s1, A_n=co(1, 5)), s2)))
    assert e.value.clause == "(iv)"


def test_half_scaled_g_ends_with_o3():
    # g = f / 2: A is all of (0, inf) and B ends at the support, so the first step is O-3
    f = StepFn.of((4, 2, 2))
    dec = run_procedure_p(f, f.scaled(Fraction(1, 2)), 2)
    assert dec.outcomes == [O3]
    assert dec.steps[0].B_n == co(0, 3)


def test_compress_rearrange_examples():
    h = StepFn.of((3, 2, 1))
    assert compress_rearrange(h, co(0, 1) | co(2, 3)) == StepFn.of((3, 1))
    assert compress_rearrange(h, IntervalSet.half_line(0)) == h
    assert compress_rearrange(h, co(1, 3)) == StepFn.of((2, 1))


def test_compress_rearrange_rational_mask():
    h = StepFn.of((3, 2, 1))
    mask = co(Fraction(1, 2), Fraction(3, 2)) | co(Fraction(5, 2), 3)
    c = compress_rearrange(h, mask)
    assert isinstance(c, Profile)
    assert c == generic_rearrange(h, mask)
    assert c.pieces == ((0, Fraction(1, 2), 3), (Fraction(1, 2), 1, 2), (1, Fraction(3, 2), 1))


@given(st.lists(st.integers(0, 9), min_size=1, max_size=12),
       st.lists(st.tuples(st.fractions(0, 14, max_denominator=4), st.fractions(0, 14, max_denominator=4)),
                max_size=5))
def test_compress_matches_generic(vals, pairs):
    h = StepFn.of(sorted(vals, reverse=True))
    mask = IntervalSet(Interval(min(p), max(p)) for p in pairs)
    assert compress_rearrange(h, mask) == generic_rearrange(h, mask)


@pytest.mark.parametrize("q", [2, 3])
def test_random_premise_pairs(q):
    rng = random.Random(q)
    for _ in range(60):
        f, g = premise_fg(rng, q)
        dec = run_procedure_p(f, g, q)
        assert verify_phis_psis(split_functions(f, g, dec))
        for s in dec.steps:
            if s.outcome == O1:
                assert verify_claim_a(dec.regions, s.a_n, s.a_tilde)
            if s.b_n is not None and s.b_n != INF:
                comp = dec.regions.B.component(s.b_club)
                assert verify_claim_b(dec.regions, comp.lo, s.b_n)


@pytest.mark.skipif(not CORPUS.exists(), reason="corpus not generated")
def test_multistep_corpus():
    corpus = json.loads(CORPUS.read_text())
    assert corpus
    for item in corpus:
        f = StepFn(tuple(Fraction(v) for v in item["f"]))
        g = StepFn(tuple(Fraction(v) for v in item["g"]))
        dec = run_procedure_p(f, g, item["q"])
        assert len(dec.steps) == item["steps"] >= 3
        assert verify_phis_psis(split_functions(f, g, dec))


def test_float_mode_regions():
    f = StepFn.of((3.0, 1.0, 1.0))
    g = StepFn.of((1.5, 1.0))
    dec = run_procedure_p(f, g, 1.5)
    assert dec.outcomes[-1] == O3


def test_pipeline_constant_and_examples():
    assert c3_constant(2, 1, 1) == Fraction(9225, 1024)
    res = theorem_main_pipeline((3, 1, 1), (2, 2, 1), 2, spaces=["l1"])
    assert res.bound_holds and res.c3 == Fraction(9225, 1024)
    res = theorem_main_pipeline((3, -1), (0, 0), 2, spaces=["l1"])
    assert res.bound_holds and res.certificate["short_circuit"] == "y = 0"
    res = theorem_main_pipeline((3, -1, 2), (3, -1, 2), 2, spaces=["l1", "lp:3/2", "weak-lp:6/5"])
    assert res.bound_holds and all(n["ratio"] == 1 for n in res.certificate["norms"])


def test_pipeline_q3_uses_rational_constant():
    res = theorem_main_pipeline((4, 2, 1), (2, 2, 2), 3, spaces=["l1"])
    assert isinstance(res.c3, Fraction) and res.bound_holds

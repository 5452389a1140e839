"""Interval decomposition of ``[0, inf)`` driven by two integral inequalities.

Given nonincreasing step functions ``f`` and ``g`` and ``q >= 1`` we look at

    A = {t : int_0^t g < int_0^t f}          B = {t : int_t^inf g^q < int_t^inf f^q}

and, when ``A`` and ``B`` cover ``[0, inf)``, split the half line into the
families ``A_n, B_n, Omega_n, Gamma_n`` of integer intervals. Every property
the construction is supposed to have is checked on the result; a failed
check raises :class:`InvariantViolation` naming the property and the step.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core.affine import PiecewiseAffine, affine_region
from .core.intervals import INF, Interval, IntervalSet, closed_open
from .core.scalar import TAU, Mode, Scalar, ceil_s, floor_s, fmt, le, power
from .core.seq import Seq, as_seq, rearrange
from .core.stepfn import Profile, StepFn, step_integral, step_power
from .errors import InvariantViolation, PremiseViolated
from .kfunc import c_q_bound, c_q_rational

O1, O2, O3 = "O-1", "O-2", "O-3"


# ---------------------------------------------------------------- regions


@dataclass(frozen=True)
class ABRegions:
    f: StepFn
    g: StepFn
    q: Scalar
    A: IntervalSet
    B: IntervalSet
    phi_l1: PiecewiseAffine
    phi_tail: PiecewiseAffine
    tol: float = TAU

    @property
    def exact(self) -> bool:
        return self.phi_l1.exact and self.phi_tail.exact

    def b_minus_a(self, t) -> bool:
        return t in self.B and t not in self.A

    def to_json(self):
        return {"A": self.A.to_json(), "B": self.B.to_json(), "q": fmt(self.q)}


def _aligned(f: StepFn, g: StepFn):
    n = max(len(f), len(g))
    zf, zg = f.zero(), g.zero()
    fc = f.cells + (zf,) * (n - len(f))
    gc = g.cells + (zg,) * (n - len(g))
    return fc, gc, n


def _check_nonincreasing(h: StepFn, name: str):
    if any(v < 0 for v in h.cells):
        raise PremiseViolated(f"{name} has a negative cell")
    for k in range(len(h.cells) - 1):
        if h.cells[k] < h.cells[k + 1]:
            raise PremiseViolated(f"{name} is not nonincreasing", witness=k + 1)


def compute_regions(f: StepFn, g: StepFn, q, tol: float = TAU, check_cover: bool = True) -> ABRegions:
    """The sets ``A`` and ``B`` for ``f`` and ``g``.

    With ``check_cover`` a point of ``[0, inf)`` outside ``A u B`` (or ``0``
    outside ``B``) raises :class:`PremiseViolated` carrying that point.
    """
    _check_nonincreasing(f, "f")
    _check_nonincreasing(g, "g")
    fc, gc, n = _aligned(f, g)
    fq = step_power(StepFn(fc), q).cells
    gq = step_power(StepFn(gc), q).cells
    zero = f.zero() if f.mode is Mode.FLOAT else g.zero()
    head = [zero]
    for a, b in zip(fc, gc):
        head.append(head[-1] + (a - b))
    tail = [zero]
    for a, b in zip(reversed(fq), reversed(gq)):
        tail.append(tail[-1] + (a - b))
    tail.reverse()
    p1, p2 = PiecewiseAffine(tuple(head)), PiecewiseAffine(tuple(tail))
    A, B = affine_region(p1, ">0", tol), affine_region(p2, ">0", tol)
    regions = ABRegions(f, g, q, A, B, p1, p2, tol)
    if check_cover:
        if 0 not in B:
            raise PremiseViolated("0 is not in B", witness=0)
        gap = (A | B).complement(0)
        if gap:
            iv = gap.intervals[0]
            w = iv.lo if not iv.lo_open else (iv.lo + (iv.hi if iv.hi != INF else iv.lo + 1)) / 2
            raise PremiseViolated(f"A u B misses {gap}", witness=w)
    return regions


# ---------------------------------------------------------------- procedure P


@dataclass(frozen=True)
class PStep:
    n: int
    b_club: int
    outcome: str
    B_n: IntervalSet
    A_n: IntervalSet
    Omega_n: IntervalSet
    Gamma_n: IntervalSet
    b_n: Optional[Scalar] = None
    b_diamond: Optional[Scalar] = None
    a_n: Optional[Scalar] = None
    a_tilde: Optional[Scalar] = None
    a_club: Optional[int] = None
    a_diamond: Optional[Scalar] = None
    b_club_next: Optional[int] = None

    def to_json(self):
        return {
            "n": self.n, "b_club": self.b_club, "outcome": self.outcome,
            "B_n": self.B_n.to_json(), "A_n": self.A_n.to_json(),
            "Omega_n": self.Omega_n.to_json(), "Gamma_n": self.Gamma_n.to_json(),
            "b_n": fmt(self.b_n), "b_diamond": fmt(self.b_diamond), "a_n": fmt(self.a_n),
            "a_tilde": fmt(self.a_tilde), "a_club": self.a_club,
            "a_diamond": fmt(self.a_diamond), "b_club_next": self.b_club_next,
        }


@dataclass(frozen=True)
class PDecomposition:
    regions: ABRegions
    steps: tuple
    checks: dict = field(default_factory=dict)

    def family(self, name: str) -> list:
        return [getattr(s, name) for s in self.steps]

    def union(self, name: str) -> IntervalSet:
        out = IntervalSet()
        for s in self.family(name):
            out = out | s
        return out

    @property
    def outcomes(self) -> list:
        return [s.outcome for s in self.steps]

    def to_json(self):
        return {"regions": self.regions.to_json(), "steps": [s.to_json() for s in self.steps],
                "checks": self.checks}


def _require(cond: bool, clause: str, msg: str, step=None):
    if not cond:
        raise InvariantViolation(clause, msg, step)


def _procedure_step(reg: ABRegions, n: int, b_club: int) -> PStep:
    A, B = reg.A, reg.B
    _require(reg.b_minus_a(b_club), "start", f"b_club={b_club} is not in B minus A", n)
    if B.covers(IntervalSet.half_line(b_club)):
        return PStep(n, b_club, O2, IntervalSet.half_line(b_club), IntervalSet(), IntervalSet(),
                     IntervalSet(), b_diamond=INF)
    comp = B.component(b_club)
    b_n = comp.hi
    _require(b_n != INF and b_n > b_club, "b_n", f"b_n={b_n} must be finite and > b_club", n)
    _require(b_n not in B, "b_n", "b_n must be a boundary point of B", n)
    b_dia = ceil_s(b_n, reg.tol)
    B_n = IntervalSet.co(b_club, b_dia)
    _require(b_n in A, "AuB", f"b_n={fmt(b_n)} lies in neither A nor B", n)
    acomp = A.component(b_n)
    a_n, a_tilde = acomp.lo, acomp.hi
    _require(a_n not in A, "a_n", "a_n must be a boundary point of A", n)
    _require(b_club <= a_n, "BclubAn", "b_club <= a_n fails", n)
    a_club = floor_s(a_n, reg.tol)
    _require(b_club <= a_club, "AnIsOk", "b_club <= a_club fails", n)
    if a_tilde == INF:
        A_n = IntervalSet.half_line(a_club)
        return PStep(n, b_club, O3, B_n, A_n, IntervalSet(), IntervalSet(), b_n, b_dia, a_n,
                     a_tilde, a_club, INF)
    a_dia = floor_s(max(a_tilde, a_club + 1), reg.tol)
    _require(a_club + 1 <= a_dia, "flatdiamond", "a_club + 1 <= a_diamond fails", n)
    _require(b_dia <= a_tilde, "HearTilde", "b_diamond <= a_tilde fails", n)
    _require(b_dia <= a_dia, "bhadim", "b_diamond <= a_diamond fails", n)
    if reg.b_minus_a(a_dia + 1):
        nxt = a_dia + 1
    elif reg.b_minus_a(a_dia):
        nxt = a_dia
    else:
        raise InvariantViolation("Astuff", f"neither {a_dia} nor {a_dia + 1} is in B minus A", n)
    A_n = IntervalSet.co(a_club, a_dia)
    Om = IntervalSet.co(a_club, a_club + 1)
    Ga = IntervalSet.co(a_dia, a_dia + 1)
    _require(nxt >= b_club + 1, "bnClubGrows", "b_club_next >= b_club + 1 fails", n)
    _require(b_dia <= nxt, "bdiambclubPlusOne", "b_diamond <= b_club_next fails", n)
    cover = A_n | B_n | Om | Ga
    _require(cover.covers(IntervalSet.co(b_club, nxt)), "ABGclub",
             "[b_club, b_club_next) is not covered", n)
    _require(IntervalSet.co(b_club, nxt + 1).covers(cover), "ABGclub",
             "A_n u B_n u Omega_n u Gamma_n leaves [b_club, b_club_next + 1)", n)
    return PStep(n, b_club, O1, B_n, A_n, Om, Ga, b_n, b_dia, a_n, a_tilde, a_club, a_dia, nxt)


def run_procedure_p(f, g=None, q=None, tol: float = TAU, max_steps: Optional[int] = None) -> PDecomposition:
    """Iterate the procedure from ``b_club = 0`` until outcome O-2 or O-3.

    Accepts either precomputed :class:`ABRegions` or ``(f, g, q)``. The
    iteration cap defaults to the support length plus two.
    """
    reg = f if isinstance(f, ABRegions) else compute_regions(f, g, q, tol)
    cap = max_steps if max_steps is not None else reg.phi_l1.last + 2
    steps = []
    b_club = 0
    for n in range(1, cap + 1):
        st = _procedure_step(reg, n, b_club)
        steps.append(st)
        if st.outcome != O1:
            break
        b_club = st.b_club_next
    else:
        raise InvariantViolation("termination", f"no O-2/O-3 outcome within {cap} steps")
    dec = PDecomposition(reg, tuple(steps))
    checks = verify_decomposition(dec)
    return PDecomposition(reg, tuple(steps), checks)


def _co_bounds(s: IntervalSet):
    iv = s.intervals[0]
    return iv.lo, iv.hi


def _is_int(v) -> bool:
    return v != INF and v == math.floor(v)


def verify_decomposition(dec: PDecomposition) -> dict:
    """Check the covering and the properties (i)-(v) of the four families."""
    reg = dec.regions
    names = ("A_n", "B_n", "Omega_n", "Gamma_n")
    for st in dec.steps:
        for name in names:
            s = getattr(st, name)
            if s.is_empty():
                continue
            _require(len(s) == 1, "(i)", f"{name} is not an interval", st.n)
            iv = s.intervals[0]
            _require(not iv.lo_open and iv.hi_open, "(i)", f"{name} is not semi-open [a, b)", st.n)
            _require(_is_int(iv.lo) and iv.lo >= 0, "(i)", f"{name} has a non-integer left end", st.n)
            _require(iv.hi == INF or _is_int(iv.hi), "(i)", f"{name} has a bad right end", st.n)
            _require(iv.lo >= st.b_club, "AllContained", f"{name} starts before b_club", st.n)
    for name in names:
        fam = dec.family(name)
        for k in range(len(fam) - 1):
            a, b = fam[k], fam[k + 1]
            if a and b:
                _require(_co_bounds(a)[1] <= _co_bounds(b)[0], "(ii)", f"{name} not ordered", k + 1)
    for st in dec.steps:
        om, ga = st.Omega_n, st.Gamma_n
        _require(bool(om) == bool(ga), "(v)", "Omega_n and Gamma_n must be empty together", st.n)
        if om:
            _require(_co_bounds(om)[1] <= _co_bounds(ga)[0], "(iii)", "Omega_n < Gamma_n fails", st.n)
            _require(om.measure() == 1 and ga.measure() == 1, "(v)", "lengths must be 1", st.n)
            _require(le(reg.g.value(_co_bounds(ga)[0]), reg.f.value(_co_bounds(om)[0]), reg.tol),
                     "(v)", "g on Gamma_n exceeds f on Omega_n", st.n)
        _check_iv(reg, st)
    cover = dec.union("A_n") | dec.union("B_n") | dec.union("Gamma_n")
    _require(cover.covers(IntervalSet.half_line(0)), "UnionIsAll", f"union is only {cover}")
    return {"(i)": True, "(ii)": True, "(iii)": True, "(iv)": True, "(v)": True,
            "UnionIsAll": True, "markers": True}


def _grid(reg: ABRegions, lo, hi) -> list:
    """Integers in ``[lo, hi]`` (``hi`` capped past the support) plus the end points."""
    top = reg.phi_l1.last + 1
    h = top if hi == INF else hi
    pts = {lo, h} | set(range(math.ceil(lo), math.floor(h) + 1))
    return sorted(p for p in pts if lo <= p <= h)


def _check_iv(reg: ABRegions, st: PStep):
    f, g, q = reg.f, reg.g, reg.q
    if st.A_n:
        lo, hi = _co_bounds(st.A_n)
        for t in _grid(reg, lo, hi):
            _require(le(step_integral(g, lo, t), step_integral(f, lo, t), reg.tol),
                     "(iv)", f"A-inequality fails at t={fmt(t)}", st.n)
    if st.B_n:
        lo, hi = _co_bounds(st.B_n)
        fq, gq = step_power(f, q), step_power(g, q)
        for t in _grid(reg, lo, hi):
            _require(le(step_integral(gq, t, hi), step_integral(fq, t, hi), reg.tol),
                     "(iv)", f"B-inequality fails at t={fmt(t)}", st.n)


# ---------------------------------------------------------------- claims


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    holds: bool
    checks: dict

    def __bool__(self):
        return self.holds


def _dense(lo, hi, per_unit: int = 4) -> list:
    lo = Fraction(lo)
    hi = Fraction(hi)
    n = max(1, int((hi - lo) * per_unit))
    return [lo + (hi - lo) * Fraction(k, n) for k in range(n + 1)]


def verify_claim_a(reg: ABRegions, a, a_tilde) -> ClaimReport:
    """Conclusions of the claim about a component ``(a, a_tilde)`` of ``A``."""
    A, f, g = reg.A, reg.f, reg.g
    inside = A.covers(IntervalSet([Interval(a, a_tilde, True, True)]))
    ends = a not in A and (a_tilde == INF or a_tilde not in A)
    _require(inside and ends, "Astuff", "hypotheses of the claim do not hold")
    a_club = floor_s(a, reg.tol)
    top = max(a_tilde, a_club + 1)
    pts = _grid(reg, a_club, top) + (_dense(a_club, top) if top != INF else [])
    gfaa = all(le(step_integral(g, a_club, t), step_integral(f, a_club, t), reg.tol) for t in pts)
    gfaaN = le(g.value(a_club), f.value(a_club), reg.tol)
    checks = {"gfaa": gfaa, "gfaaN": gfaaN}
    if a_tilde != INF:
        a_dia = floor_s(top, reg.tol)
        checks["diamond_in_B_minus_A"] = reg.b_minus_a(a_dia) or reg.b_minus_a(a_dia + 1)
    rep = ClaimReport("Astuff", all(checks.values()), checks)
    if not rep:
        raise InvariantViolation("Astuff", f"checks failed: {checks}")
    return rep


def verify_claim_b(reg: ABRegions, beta, b) -> ClaimReport:
    """Conclusion of the claim about an interval ``(beta, b)`` of ``B`` ending at ``b``."""
    B = reg.B
    inside = B.covers(IntervalSet([Interval(beta, b, True, True)]))
    _require(b not in B and inside, "Bstuff", "hypotheses of the claim do not hold")
    b_dia = ceil_s(b, reg.tol)
    fq, gq = step_power(reg.f, reg.q), step_power(reg.g, reg.q)
    pts = _grid(reg, beta, b_dia) + _dense(beta, b_dia)
    ewb = all(le(step_integral(gq, t, b_dia), step_integral(fq, t, b_dia), reg.tol) for t in pts)
    rep = ClaimReport("Bstuff", ewb, {"ewb": ewb})
    if not rep:
        raise InvariantViolation("Bstuff", "integral inequality fails")
    return rep


# ---------------------------------------------------------------- phi / psi


@dataclass(frozen=True)
class Split:
    f: StepFn
    g: StepFn
    q: Scalar
    masks: dict
    phi1: StepFn
    phi2: StepFn
    phi3: StepFn
    psi1: StepFn
    psi2: StepFn
    psi3: StepFn
    tol: float = TAU

    def items(self):
        return {"phi1": self.phi1, "phi2": self.phi2, "phi3": self.phi3,
                "psi1": self.psi1, "psi2": self.psi2, "psi3": self.psi3}.items()


def split_functions(f: StepFn, g: StepFn, decomp: PDecomposition) -> Split:
    """Restrict ``f`` to the unions of ``A_n``, ``B_n``, ``Omega_n`` and ``g`` to ``A_n``, ``B_n``, ``Gamma_n``."""
    n = max(len(f), len(g))
    f, g = StepFn(_aligned(f, g)[0]), StepFn(_aligned(f, g)[1])
    masks = {k: decomp.union(k) for k in ("A_n", "B_n", "Omega_n", "Gamma_n")}
    ph = [f.masked(masks[k]) for k in ("A_n", "B_n", "Omega_n")]
    ps = [g.masked(masks[k]) for k in ("A_n", "B_n", "Gamma_n")]
    tol = decomp.regions.tol
    for j, h in enumerate(ph + ps):
        base = f if j < 3 else g
        _require(all(0 <= v and le(v, b, tol) for v, b in zip(h.cells, base.cells)),
                 "split", "masked function leaves [0, f] or [0, g]")
    for k in range(n):
        _require(le(g.cells[k], ps[0].cells[k] + ps[1].cells[k] + ps[2].cells[k], tol),
                 "gAndPsis", f"g exceeds psi1 + psi2 + psi3 on cell {k}")
    return Split(f, g, decomp.regions.q, masks, *ph, *ps, tol)


def compress_rearrange(h: StepFn, mask: IntervalSet) -> StepFn | Profile:
    """Rearrangement of ``h * chi_mask`` for nonincreasing ``h``, by pushing blocks left.

    The pieces of ``h`` above the mask are laid end to end from ``0`` in their
    original order. Returns a StepFn when the mask has integer end points.
    """
    pieces = []
    pos = Fraction(0) if h.mode is Mode.EXACT else 0.0
    end = len(h.cells)
    for iv in mask:
        lo, hi = iv.lo, min(iv.hi, end)
        k = math.floor(lo)
        while k < hi:
            l, r = max(lo, k), min(hi, k + 1)
            if r > l:
                pieces.append((pos, pos + (r - l), abs(h.cells[k])))
                pos = pos + (r - l)
            k += 1
    prof = Profile(tuple(pieces))
    if prof.is_integer_grid():
        return prof.to_stepfn(len(h.cells))
    return prof


def generic_rearrange(h: StepFn, mask: IntervalSet) -> StepFn | Profile:
    """Rearrangement of ``h * chi_mask`` from its distribution function."""
    prof = Profile.from_stepfn(h).masked(mask).rearranged()
    if prof.is_integer_grid():
        return prof.to_stepfn(len(h.cells))
    return prof


def _heads(cells):
    out, acc = [], 0
    for v in cells:
        acc = acc + v
        out.append(acc)
    return out


def _tails(cells):
    return _heads(cells[::-1])[::-1]


def verify_phis_psis(split: Split) -> ClaimReport:
    """Compare the rearrangements of the six functions.

    Rearrangements are computed by block compression and cross-checked
    against the generic rearrangement before the inequalities are tested at
    every integer breakpoint.
    """
    q, tol = split.q, split.tol
    stars = {}
    for name, mask_name, base in (("phi1", "A_n", split.f), ("phi2", "B_n", split.f),
                                  ("phi3", "Omega_n", split.f), ("psi1", "A_n", split.g),
                                  ("psi2", "B_n", split.g), ("psi3", "Gamma_n", split.g)):
        mask = split.masks[mask_name]
        c = compress_rearrange(base, mask)
        _require(c == generic_rearrange(base, mask), "compression", f"{name}* differs between routes")
        _require(c == dict(split.items())[name].rearranged(), "compression", f"{name}* mismatch")
        stars[name] = c
    n = max(len(s.cells) for s in stars.values())
    pad = {k: v.cells + (v.zero(),) * (n - len(v.cells)) for k, v in stars.items()}
    a_ok = all(le(a, b, tol) for a, b in zip(_heads(pad["psi1"]), _heads(pad["phi1"])))
    b_ok = all(le(a, b, tol) for a, b in zip(_tails([power(v, q) for v in pad["psi2"]]),
                                             _tails([power(v, q) for v in pad["phi2"]])))
    c_ok = all(le(a, b, tol) for a, b in zip(pad["psi3"], pad["phi3"]))
    checks = {"A-stuff": a_ok, "B-stuff": b_ok, "GammaOmega": c_ok}
    for k, v in checks.items():
        _require(v, k, "rearranged inequality fails")
    return ClaimReport("PhisAndPsis", True, checks)


# ---------------------------------------------------------------- end to end


DEFAULT_EPS = Fraction(1, 1024)


def c3_constant(q, C1, C2, eps=DEFAULT_EPS, exact: bool = True):
    """``(1 + eps) C(q) C2^4 (C1 + 2)``."""
    cq = c_q_rational(q) if exact else c_q_bound(q)
    return (1 + eps) * cq * C2 ** 4 * (C1 + 2)


@dataclass(frozen=True)
class PipelineResult:
    bound_holds: bool
    c3: Scalar
    certificate: dict


def theorem_main_pipeline(x, y, q, C1=1, C2=1, eps=DEFAULT_EPS, spaces=(), tol: float = TAU) -> PipelineResult:
    """Run regions, procedure, split and claims for ``f = (1+eps) C(q) x*`` and ``g = y*``.

    For every space in ``spaces`` checks ``|y|_E <= C3 |x|_E`` together with
    the intermediate bounds on the pieces ``psi_j``.
    """
    from .spaces import as_space, space_norm

    x, y = as_seq(x), as_seq(y)
    exact = x.exact and y.exact and float(q).is_integer()
    if not exact:
        x, y = x.to_float(), y.to_float()
    cq = c_q_rational(q) if exact else c_q_bound(q)
    e = Fraction(eps) if exact else float(eps)
    c3 = (1 + e) * cq * C2 ** 4 * (C1 + 2)
    cert: dict = {"C(q)": fmt(cq), "eps": fmt(e), "C3": fmt(c3)}
    spaces = [as_space(s) for s in spaces]
    norms = []
    if y.is_zero():
        cert["short_circuit"] = "y = 0"
        for E in spaces:
            nx = space_norm(E, x)
            norms.append({"space": str(E), "x": float(nx), "y": 0.0, "ratio": 0.0})
        cert["norms"] = norms
        return PipelineResult(True, c3, cert)
    g = StepFn(rearrange(y).values)
    h = StepFn(rearrange(x).values).scaled(cq)
    f = h.scaled(1 + e)
    reg = compute_regions(f, g, q, tol)
    dec = run_procedure_p(reg)
    split = split_functions(f, g, dec)
    claims = verify_phis_psis(split)
    cert.update({"outcomes": dec.outcomes, "checks": dec.checks, "claims": claims.checks,
                 "ledger": [s.to_json() for s in dec.steps]})
    holds = True
    for E in spaces:
        nx, ny = float(space_norm(E, x)), float(space_norm(E, y))
        lim = float(c3) * nx
        pieces = {k: float(space_norm(E, Seq(v.cells))) for k, v in split.items()}
        base = float((1 + e) * cq) * nx
        piece_ok = {
            "phi": all(pieces[k] <= base * C2 * (1 + tol) + tol for k in ("phi1", "phi2", "phi3")),
            "psi1": pieces["psi1"] <= base * C2 ** 2 * (1 + tol) + tol,
            "psi2": pieces["psi2"] <= base * C1 * C2 ** 2 * (1 + tol) + tol,
            "psi3": pieces["psi3"] <= base * C2 ** 2 * (1 + tol) + tol,
        }
        ok = ny <= lim * (1 + tol) + tol and all(piece_ok.values())
        holds = holds and ok
        norms.append({"space": str(E), "x": nx, "y": ny, "ratio": ny / nx if nx else math.inf,
                      "pieces": pieces, "piece_bounds": piece_ok, "holds": ok})
    cert["norms"] = norms
    return PipelineResult(holds, c3, cert)

"""Structured linear maps on finite sequences and the weak-majorization transfer.

Every operator acts on vectors of a fixed length ``dim`` (shorter inputs are
padded with zeros). Matrices are lists of rows; ``(Tx)_n = sum_m T[n][m] x_m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core.scalar import TAU, sign
from .core.seq import Seq, as_seq, rearrange
from .errors import DimensionMismatch, PremiseViolated


def _fit(x: Seq, dim: int) -> tuple:
    vals = x.values
    if len(vals) > dim:
        if any(v != 0 for v in vals[dim:]):
            raise DimensionMismatch(f"input of support {x.support_len()} exceeds dimension {dim}")
        vals = vals[:dim]
    return vals + (x._zero(),) * (dim - len(vals))


@dataclass(frozen=True)
class SignedPermutation:
    """``(Mx)_n = theta_n x_{src[n]}``; ``src[n] = -1`` leaves output ``n`` at zero.

    With every ``src[n] >= 0`` and ``src`` a bijection this is a member of the
    class of sign-changing permutations, an isometry of every ``l_r``.
    """

    src: tuple
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(int(s) for s in self.src))
        object.__setattr__(self, "theta", tuple(int(t) for t in self.theta))
        if len(self.src) != len(self.theta):
            raise ValueError("src and theta must have equal length")
        used = [s for s in self.src if s >= 0]
        if len(set(used)) != len(used) or any(s >= len(self.src) for s in used):
            raise ValueError("src must be injective into range(dim)")
        if any(t not in (1, -1) for t in self.theta):
            raise ValueError("theta entries must be +1 or -1")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def dim(self) -> int:
        return len(self.src)

    @property
    def is_bijection(self) -> bool:
        return all(s >= 0 for s in self.src)

    def after(self, other: "SignedPermutation") -> "SignedPermutation":
        """``self o other``: apply ``other`` first."""
        if other.dim != self.dim:
            raise DimensionMismatch("dimensions differ")
        src, theta = [], []
        for n in range(self.dim):
            m = self.src[n]
            if m < 0 or other.src[m] < 0:
                src.append(-1)
                theta.append(1)
            else:
                src.append(other.src[m])
                theta.append(self.theta[n] * other.theta[m])
        return SignedPermutation(tuple(src), tuple(theta))


@dataclass(frozen=True)
class Diagonal:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if any(abs(f) > 1 for f in self.factors):
            raise ValueError("diagonal factors must satisfy |f| <= 1")

    @property
    def dim(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ConvexCombo:
    terms: tuple  # of (weight, SignedPermutation)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((w, m) for w, m in self.terms))
        if not self.terms:
            raise ValueError("empty convex combination")
        if any(w <= 0 for w, _ in self.terms):
            raise ValueError("weights must be positive")
        dims = {m.dim for _, m in self.terms}
        if len(dims) != 1:
            raise DimensionMismatch("terms have different dimensions")

    @property
    def dim(self) -> int:
        return self.terms[0][1].dim

    @property
    def weights(self) -> list:
        return [w for w, _ in self.terms]

    @property
    def factors(self) -> list:
        return [m for _, m in self.terms]


@dataclass(frozen=True)
class Truncation:
    """``Pi_N``: keeps the first ``N`` coordinates."""

    n: int
    dim: int | None = None


@dataclass(frozen=True)
class DenseMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows) -> "DenseMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def dim(self) -> int:
        if self.rows and len(self.rows) != len(self.rows[0]):
            raise DimensionMismatch("only square matrices have a single dimension")
        return len(self.rows)


@dataclass(frozen=True)
class Composition:
    """``ops[0] o ops[1] o ...``: the last operator is applied first."""

    ops: tuple

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    @property
    def dim(self) -> int | None:
        dims = {op.dim for op in self.ops if op.dim is not None}
        if len(dims) > 1:
            raise DimensionMismatch("operators in a composition must share a dimension")
        return dims.pop() if dims else None


OperatorExpr = Union[SignedPermutation, Diagonal, ConvexCombo, Truncation, DenseMatrix, Composition]


def apply(T: OperatorExpr, x) -> Seq:
    x = as_seq(x)
    dim = T.dim if T.dim is not None else max(len(x), 1)
    v = _fit(x, dim)
    zero = x._zero()
    if isinstance(T, SignedPermutation):
        out = tuple(zero if s < 0 else t * v[s] for s, t in zip(T.src, T.theta))
    elif isinstance(T, Diagonal):
        out = tuple(f * a for f, a in zip(T.factors, v))
    elif isinstance(T, Truncation):
        out = tuple(a if i < T.n else zero for i, a in enumerate(v))
    elif isinstance(T, ConvexCombo):
        acc = [zero] * dim
        for w, m in T.terms:
            for i, a in enumerate(apply(m, Seq(v)).values):
                acc[i] += w * a
        out = tuple(acc)
    elif isinstance(T, DenseMatrix):
        if T.rows and len(T.rows[0]) != dim:
            raise DimensionMismatch("matrix width does not match input")
        out = tuple(sum((r * a for r, a in zip(row, v)), zero) for row in T.rows)
    elif isinstance(T, Composition):
        y = Seq(v)
        for op in reversed(T.ops):
            y = apply(op, y)
        out = y.values
    else:
        raise TypeError(f"not an operator: {T!r}")
    return Seq(out)


def to_matrix(T: OperatorExpr, dim: int | None = None) -> list:
    """The represented matrix, with exact entries when the operator's entries are exact."""
    n = T.dim if T.dim is not None else dim
    if n is None:
        raise DimensionMismatch("operator has no intrinsic dimension; pass dim")
    if isinstance(T, DenseMatrix):
        return [list(r) for r in T.rows]
    # sparse families are assembled entry by entry instead of column by column
    if isinstance(T, (SignedPermutation, ConvexCombo)):
        M = [[Fraction(0)] * n for _ in range(n)]
        terms = T.terms if isinstance(T, ConvexCombo) else ((Fraction(1), T),)
        for w, m in terms:
            for i, (s, t) in enumerate(zip(m.src, m.theta)):
                if s >= 0:
                    M[i][s] += w * t
        return M
    if isinstance(T, Diagonal):
        M = [[Fraction(0)] * n for _ in range(n)]
        for i, f in enumerate(T.factors):
            M[i][i] = f
        return M
    cols = []
    for j in range(n):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        cols.append(apply(T, Seq(tuple(e))).values)
    return [[cols[j][i] for j in range(n)] for i in range(len(cols[0]) if cols else 0)]


def norm_l1(T: OperatorExpr, dim: int | None = None):
    """``|T|_{l1 -> l1}``: the largest absolute column sum."""
    M = to_matrix(T, dim)
    if not M:
        return Fraction(0)
    return max(sum(abs(M[i][j]) for i in range(len(M))) for j in range(len(M[0])))


def norm_linf(T: OperatorExpr, dim: int | None = None):
    """``|T|_{l_inf -> l_inf}``: the largest absolute row sum."""
    M = to_matrix(T, dim)
    if not M:
        return Fraction(0)
    return max(sum(abs(a) for a in row) for row in M)


def build_w_y(x) -> tuple[SignedPermutation, SignedPermutation]:
    """Signed permutations with ``W x = x*`` and ``Y x* = x``.

    ``W`` reads the entries in order of decreasing modulus (ties keep their
    index order) and fixes the sign; ``Y`` is its inverse.
    """
    x = as_seq(x)
    n = max(len(x), 1)
    v = _fit(x, n)
    order = sorted(range(n), key=lambda i: -abs(v[i]))
    pos = [0] * n
    for r, i in enumerate(order):
        pos[i] = r
    W = SignedPermutation(tuple(order), tuple(sign(v[i]) for i in order))
    Y = SignedPermutation(tuple(pos), tuple(sign(v[i]) for i in range(n)))
    return W, Y


# ---------------------------------------------------------------- transfer


def _tail_cut(xs: list, target) -> list:
    """Terms ``(weight, kept_indices)`` with ``sum weight * diag(kept) x* `` summing to ``target``.

    Keeps the head of ``x*`` whole and scales the entry where the running sum
    crosses ``target`` by ``rho``, written as a two-point convex combination.
    """
    n = len(xs)
    if target == 0:
        return [(Fraction(1), frozenset())]
    run = Fraction(0)
    for k in range(n):
        if run + xs[k] >= target:
            rho = (target - run) / xs[k]
            nonzero_after = {i for i in range(k + 1, n) if xs[i] != 0}
            keep_all = frozenset(set(range(n)) - nonzero_after)
            out = [(rho, keep_all)]
            if rho != 1:
                out.append((1 - rho, keep_all - {k}))
            return out
        run += xs[k]
    raise PremiseViolated("total of y* exceeds total of x*")


def _t_transforms(xp: list, ys: list) -> list:
    """Doubly stochastic ``D`` with ``D xp = ys`` from a sweep of T-transforms.

    Needs ``xp`` and ``ys`` nonincreasing with ``ys`` majorized by ``xp``.
    """
    n = len(xp)
    xp = list(xp)
    D = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(n * n):
        js = [i for i in range(n) if xp[i] > ys[i]]
        if not js:
            break
        j = js[-1]
        k = next(i for i in range(j + 1, n) if xp[i] < ys[i])
        delta = min(xp[j] - ys[j], ys[k] - xp[k])
        mu = delta / (xp[j] - xp[k])  # weight on the transposition
        lam = 1 - mu
        rj, rk = D[j], D[k]
        D[j] = [lam * a + mu * b for a, b in zip(rj, rk)]
        D[k] = [mu * a + lam * b for a, b in zip(rj, rk)]
        xp[j], xp[k] = xp[j] - delta, xp[k] + delta
    if xp != list(ys):
        raise PremiseViolated("T-transform sweep did not reach y*")
    return D


def birkhoff(D: list) -> list:
    """Exact decomposition of a doubly stochastic matrix into ``(weight, perm)`` terms.

    ``perm[r]`` is the column used in row ``r``. A perfect matching on the
    positive entries exists at every stage by Birkhoff's theorem.
    """
    n = len(D)
    R = [list(r) for r in D]
    out = []
    remaining = Fraction(1)
    while remaining > 0:
        rows, cols = zip(*[(i, j) for i in range(n) for j in range(n) if R[i][j] > 0])
        G = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        match = maximum_bipartite_matching(G, perm_type="column")
        if (match < 0).any():
            raise PremiseViolated("matrix is not doubly stochastic")
        perm = tuple(int(c) for c in match)
        w = min(R[i][perm[i]] for i in range(n))
        for i in range(n):
            R[i][perm[i]] -= w
        remaining -= w
        out.append((w, perm))
    return out


def _top_prefix(w: list) -> list:
    """``out[s-1]`` is the sum of the ``s`` largest entries of ``w``."""
    acc, out = Fraction(0), []
    for v in sorted(w, reverse=True):
        acc += v
        out.append(acc)
    return out


def permutahedron_decomposition(xp: list, ys: list, max_steps: int | None = None) -> list:
    """Write ``ys`` as ``sum lam_i P_i xp`` with at most ``len(xp)`` permutations.

    ``xp`` is nonincreasing and majorizes ``ys`` (equal totals). Each step takes
    the vertex ``z`` of the permutahedron ordered like the current point ``y``
    and moves ``y`` away from ``z`` as far as the polytope allows; the stopping
    point lies on a smaller face, so the loop ends after at most ``n`` steps.
    Returns ``(weight, src)`` pairs with ``(P xp)_r = xp[src[r]]``.

    Internally every vector is an integer vector over a common denominator.
    """
    n = len(xp)
    den = math.lcm(*(Fraction(v).denominator for v in list(xp) + list(ys)))
    X = [int(v * den) for v in xp]
    F = list(accumulate(X))
    Y, d = [int(v * den) for v in ys], 1  # current point is Y / d
    remaining = Fraction(1)
    out = []
    for _ in range(max_steps or n + 1):
        order = sorted(range(n), key=lambda i: -Y[i])
        src = [0] * n
        for rank, i in enumerate(order):
            src[i] = rank
        Z = [X[src[i]] for i in range(n)]
        if all(yv == d * zv for yv, zv in zip(Y, Z)):
            out.append((remaining, tuple(src)))
            return out
        a, b = _max_step(Y, d, Z, F)
        if a <= 0:
            raise PremiseViolated("point is not in the permutahedron of x'")
        lam = Fraction(a, b)
        out.append((remaining * lam, tuple(src)))
        remaining *= 1 - lam
        # y' = (y - lam z) / (1 - lam) = (b Y - a d Z) / (d (b - a))
        Y = [b * yv - a * d * zv for yv, zv in zip(Y, Z)]
        d = d * (b - a)
        g = math.gcd(d, *Y)
        Y, d = [v // g for v in Y], d // g
    raise PremiseViolated("permutahedron decomposition did not terminate")


def _max_step(Y: list, d: int, Z: list, F: list) -> tuple[int, int]:
    """Largest ``lam = a/b`` with ``top_s(y - lam z) <= (1 - lam) F(s)`` for every ``s``.

    Here ``y = Y/d``. ``h(lam) = max_s [top_s(y - lam z) - (1 - lam) F(s)]`` is
    convex with ``h(0) <= 0 < h(1)``; Newton steps from the right reach its root
    exactly, each step jumping to the root of the active linear piece.
    """
    n = len(Y)
    a, b = 1, 1
    while True:
        # scaled by b d: w = b Y - a d Z, compare with (b - a) d F(s)
        W = [b * yv - a * d * zv for yv, zv in zip(Y, Z)]
        order = sorted(range(n), key=lambda i: -W[i])
        best_s, best = None, 0
        run = 0
        for s in range(1, n + 1):
            run += W[order[s - 1]]
            g = run - (b - a) * d * F[s - 1]
            if g > best:
                best_s, best = s, g
        if best_s is None:
            return a, b
        S = order[:best_s]
        sy, sz, fs = sum(Y[i] for i in S), sum(Z[i] for i in S), F[best_s - 1]
        # root of (sy/d - fs) + lam (fs - sz)
        a, b = d * fs - sy, d * (fs - sz)
        g = math.gcd(a, b)
        a, b = a // g, b // g


def _split_partial(m: SignedPermutation) -> list:
    """A partial signed permutation as ``1/2 (S+ + S-)`` with full bijections."""
    if m.is_bijection:
        return [(Fraction(1), m)]
    used = set(s for s in m.src if s >= 0)
    free_src = [s for s in range(m.dim) if s not in used]
    free_out = [n for n in range(m.dim) if m.src[n] < 0]
    out = []
    for sg in (1, -1):
        src, theta = list(m.src), list(m.theta)
        for n, s in zip(free_out, free_src):
            src[n], theta[n] = s, sg
        out.append((Fraction(1, 2), SignedPermutation(tuple(src), tuple(theta))))
    return out


def _exact(x: Seq) -> Seq:
    return Seq(tuple(Fraction(v) for v in x.values))


def hlp_transfer(x, y, method: str = "permutahedron") -> ConvexCombo:
    """A convex combination ``T`` of sign-changing permutations with ``T x = y``.

    Requires ``sum_{n<=m} y*_n <= sum_{n<=m} x*_n`` for every ``m``. Float inputs
    are converted exactly to rationals, so weights are always exact.

    The tail of ``x*`` is first cut down so that the totals agree (a diagonal
    map, itself an average of sign changes). The remaining doubly stochastic
    step is decomposed either directly in the permutahedron of the cut vector
    (``method="permutahedron"``, at most ``n`` permutations) or by building a
    matrix from T-transforms and running Birkhoff's algorithm on it
    (``method="birkhoff"``, many more terms).
    """
    from .majorization import hlp_violation

    x, y = _exact(as_seq(x)), _exact(as_seq(y))
    bad = hlp_violation(x, y)
    if bad is not None:
        raise PremiseViolated("weak majorization fails", witness=bad)
    n = max(len(x), len(y), 1)
    x, y = x.padded(n), y.padded(n)
    W, _ = build_w_y(x)
    _, Y = build_w_y(y)
    xs, ys = list(rearrange(x).values), list(rearrange(y).values)

    cuts = _tail_cut(xs, sum(ys, Fraction(0)))
    # D1 x* where D1 = sum w1 diag(keep)
    xp = [sum((w1 for w1, keep in cuts if i in keep), Fraction(0)) * v for i, v in enumerate(xs)]
    if method == "permutahedron":
        perms = permutahedron_decomposition(xp, ys)
    elif method == "birkhoff":
        perms = birkhoff(_t_transforms(xp, ys))
    else:
        raise ValueError(f"unknown method {method!r}")
    acc: dict = {}
    for w1, keep in cuts:
        cut = SignedPermutation(tuple(i if i in keep else -1 for i in range(n)), (1,) * n)
        for w2, perm in perms:
            P = SignedPermutation(perm, (1,) * n).after(cut)
            for w3, S in _split_partial(P):
                M = Y.after(S.after(W))
                key = (M.src, M.theta)
                acc[key] = acc.get(key, Fraction(0)) + w1 * w2 * w3
    terms = tuple((w, SignedPermutation(*k)) for k, w in sorted(acc.items()))
    return ConvexCombo(terms)


# ---------------------------------------------------------------- l_q estimates


def _float_matrix(T: OperatorExpr, dim: int | None = None) -> np.ndarray:
    return np.asarray([[float(a) for a in row] for row in to_matrix(T, dim)], dtype=float)


def _dual_vec(v: np.ndarray, p: float) -> np.ndarray:
    # the unit l_{p'} vector attaining <v, w> = |v|_p
    nv = np.linalg.norm(v, p)
    if nv == 0:
        return np.zeros_like(v)
    return np.sign(v) * (np.abs(v) / nv) ** (p - 1)


def norm_lq_lower(T: OperatorExpr, q, restarts: int = 32, steps: int = 500,
                  seed: int = 0, dim: int | None = None) -> float:
    """A lower bound on ``|T|_{l_q -> l_q}``: the best ratio ``|Tx|_q / |x|_q`` seen.

    Runs the nonlinear power iteration ``x <- dual(T^t dual(T x))`` from the
    all-ones vector, the basis vectors and ``restarts`` random starts.
    """
    A = _float_matrix(T, dim)
    if A.size == 0:
        return 0.0
    q = float(q)
    m = A.shape[1]
    if q == 1:
        return float(np.abs(A).sum(axis=0).max())
    if np.isinf(q):
        return float(np.abs(A).sum(axis=1).max())
    qp = q / (q - 1)
    rng = np.random.default_rng(seed)
    starts = [np.ones(m)] + list(np.eye(m)) + [rng.standard_normal(m) for _ in range(restarts)]
    best = 0.0
    for x in starts:
        x = x / np.linalg.norm(x, q)
        prev = -1.0
        for _ in range(steps):
            y = A @ x
            val = float(np.linalg.norm(y, q))
            best = max(best, val)
            if val <= prev * (1 + 1e-13):
                break
            prev = val
            z = A.T @ _dual_vec(y, q)
            if not np.any(z):
                break
            x = _dual_vec(z, qp)
            nx = np.linalg.norm(x, q)
            if nx == 0:
                break
            x = x / nx
    return best


@dataclass(frozen=True)
class InterpCheck:
    holds: bool
    slack: float
    estimate: float
    bound: float


def riesz_thorin_check(T: OperatorExpr, theta, q=None, tol: float = TAU, **kw) -> InterpCheck:
    """One-sided check ``|T|_{p} <= |T|_1^{1-theta} |T|_inf^theta`` at ``p = 1/(1-theta)``.

    The left side is a lower estimate and the right side is exact, so a
    failure could only come from a false theorem or a bug.
    """
    theta = float(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    p = 1 / (1 - theta) if q is None else float(q)
    est = norm_lq_lower(T, p, **kw)
    bound = float(norm_l1(T)) ** (1 - theta) * float(norm_linf(T)) ** theta
    return InterpCheck(est <= bound + tol, bound - est, est, bound)

"""Scalars: exact rationals (``Fraction``) or ``float`` with a comparison tolerance.

Exact mode is used whenever every input is rational and every exponent is a
positive integer. Anything else falls back to float64, where comparisons
treat differences below ``TAU`` (scaled by magnitude) as zero.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Union[Fraction, float]

TAU = 1e-9
INF = math.inf


class Mode(str, enum.Enum):
    EXACT = "rational"
    FLOAT = "float"


def parse_scalar(v, mode: Mode | None = None) -> Scalar:
    """Convert ``v`` (int, Fraction, float or a ``"num/den"`` string) to a scalar.

    With ``mode=None`` ints, Fractions and strings become Fractions, floats stay floats.
    """
    if isinstance(v, str):
        s = v.strip()
        if s.lower() in ("inf", "+inf", "infinity"):
            return INF
        try:
            out: Scalar = Fraction(s)
        except ValueError:
            out = float(s)
    elif isinstance(v, bool):
        raise TypeError("booleans are not scalars")
    elif isinstance(v, Rational):
        out = Fraction(v)
    elif isinstance(v, float):
        out = v
    else:
        # numpy scalars and friends
        out = float(v)
    if mode is Mode.FLOAT:
        return float(out)
    if mode is Mode.EXACT:
        if isinstance(out, float):
            if math.isinf(out):
                return out
            return Fraction(out)
        return out
    return out


def mode_of(*values) -> Mode:
    """FLOAT if any value is a finite float, else EXACT."""
    for v in values:
        if isinstance(v, float) and not math.isinf(v):
            return Mode.FLOAT
    return Mode.EXACT


def is_integral(q) -> bool:
    if isinstance(q, (int, Fraction)):
        return Fraction(q).denominator == 1
    return float(q).is_integer()


def power(v: Scalar, q) -> Scalar:
    """``v ** q``; exact when ``v`` is a Fraction and ``q`` a positive integer."""
    from ..errors import ArithmeticModeMismatch

    if isinstance(v, Fraction):
        if not is_integral(q) or q <= 0:
            raise ArithmeticModeMismatch(f"exponent {q} is not a positive integer in exact mode")
        return v ** int(q)
    return float(v) ** float(q)


def root(v: Scalar, q) -> tuple[Scalar, bool]:
    """``v ** (1/q)`` for ``v >= 0``; the flag is True when the result is exact."""
    if isinstance(v, Fraction) and is_integral(q):
        k = int(q)
        n = _iroot(v.numerator, k)
        d = _iroot(v.denominator, k)
        if n is not None and d is not None:
            return Fraction(n, d), True
    return float(v) ** (1.0 / float(q)), False


def _iroot(n: int, k: int):
    if n < 2:
        return n if n >= 0 else None
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == n else None


def scale(*values) -> float:
    return max([1.0] + [abs(float(v)) for v in values if not math.isinf(float(v))])


def gt(a: Scalar, b: Scalar, tol: float = TAU) -> bool:
    """Strict ``a > b``; in float mode the gap must exceed ``tol`` (relative)."""
    if isinstance(a, Rational) and isinstance(b, Rational):
        return a > b
    return float(a) - float(b) > tol * scale(a, b)


def le(a: Scalar, b: Scalar, tol: float = TAU) -> bool:
    return not gt(a, b, tol)


def eq(a: Scalar, b: Scalar, tol: float = TAU) -> bool:
    return le(a, b, tol) and le(b, a, tol)


def sign(v: Scalar) -> int:
    return -1 if v < 0 else 1


def floor_s(v: Scalar, tol: float = TAU) -> int:
    """Largest integer ``<= v``; float values within ``tol`` of an integer snap to it."""
    if isinstance(v, Rational):
        return math.floor(v)
    r = round(v)
    if abs(v - r) <= tol * scale(v):
        return int(r)
    return math.floor(v)


def ceil_s(v: Scalar, tol: float = TAU) -> int:
    """Smallest integer ``>= v`` with the same snapping rule as :func:`floor_s`."""
    if isinstance(v, Rational):
        return math.ceil(v)
    r = round(v)
    if abs(v - r) <= tol * scale(v):
        return int(r)
    return math.ceil(v)


def fmt(v: Scalar):
    """JSON-friendly rendering: Fractions as ``"num/den"`` strings."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def rational_upper(x: float, bits: int = 30) -> Fraction:
    """A dyadic rational that is certainly ``>= x`` (one ulp-margin above ``ceil``)."""
    den = 2**bits
    return Fraction(math.ceil(x * den) + 1, den)

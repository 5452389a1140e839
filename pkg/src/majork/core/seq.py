"""Finitely supported real sequences and their nonincreasing rearrangements."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import ArithmeticModeMismatch
from .scalar import Mode, Scalar, is_integral, mode_of, parse_scalar, power


@dataclass(frozen=True, eq=False)
class Seq:
    """A real sequence indexed from 1, extended by zeros past ``len(values)``.

    Index 0 of ``values`` holds the first term. Equality ignores trailing zeros.
    """

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @classmethod
    def of(cls, values: Iterable, mode: Mode | None = None) -> "Seq":
        vals = [parse_scalar(v) for v in values]
        if mode is None:
            mode = mode_of(*vals)
        return cls(tuple(parse_scalar(v, mode) for v in vals))

    @classmethod
    def zeros(cls, n: int, mode: Mode = Mode.EXACT) -> "Seq":
        z = Fraction(0) if mode is Mode.EXACT else 0.0
        return cls((z,) * n)

    @property
    def mode(self) -> Mode:
        return mode_of(*self.values)

    @property
    def exact(self) -> bool:
        return self.mode is Mode.EXACT

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def at(self, n: int) -> Scalar:
        """Term ``n`` (0-based) with the implied zero tail."""
        if 0 <= n < len(self.values):
            return self.values[n]
        return self._zero()

    def _zero(self):
        return 0.0 if self.mode is Mode.FLOAT else Fraction(0)

    def support_len(self) -> int:
        n = len(self.values)
        while n and self.values[n - 1] == 0:
            n -= 1
        return n

    def trimmed(self) -> "Seq":
        return Seq(self.values[: self.support_len()])

    def padded(self, n: int) -> "Seq":
        if n <= len(self.values):
            return self
        return Seq(self.values + (self._zero(),) * (n - len(self.values)))

    def abs(self) -> "Seq":
        return Seq(tuple(abs(v) for v in self.values))

    def to_float(self) -> "Seq":
        return Seq(tuple(float(v) for v in self.values))

    def is_zero(self) -> bool:
        return self.support_len() == 0

    def __eq__(self, other):
        if not isinstance(other, Seq):
            return NotImplemented
        return self.trimmed().values == other.trimmed().values

    def __hash__(self):
        return hash(self.trimmed().values)

    def __repr__(self):
        return "Seq(" + ", ".join(str(v) for v in self.values) + ")"


def as_seq(x) -> Seq:
    return x if isinstance(x, Seq) else Seq.of(x)


def rearrange(x: Seq | Sequence) -> Seq:
    """Nonincreasing rearrangement ``x*``: absolute values sorted in decreasing order."""
    x = as_seq(x)
    return Seq(tuple(sorted((abs(v) for v in x.values), reverse=True)))


def _check_q(x: Seq, q):
    if x.exact and x.values and not is_integral(q):
        raise ArithmeticModeMismatch(f"q={q} is not an integer; convert the sequence to float mode")


def head_sum(x: Seq | Sequence, m: int) -> Scalar:
    """``sum_{n<=m} x*_n``."""
    xs = rearrange(x)
    return sum(xs.values[:m], xs._zero())


def power_cells(x: Seq, q) -> list:
    """``(x*_n)^q`` for every stored term of the rearrangement."""
    x = as_seq(x)
    _check_q(x, q)
    return [power(v, q) for v in rearrange(x).values]


def head_power_sum(x: Seq | Sequence, q, m: int) -> Scalar:
    """``sum_{n<=m} (x*_n)^q``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    x = as_seq(x)
    return sum(power_cells(x, q)[:m], x._zero())


def tail_power_sum(x: Seq | Sequence, q, m: int) -> Scalar:
    """``sum_{n>=m} (x*_n)^q`` (1-based ``m``); finite because the support is."""
    if m < 1:
        raise ValueError("m must be >= 1")
    x = as_seq(x)
    return sum(power_cells(x, q)[m - 1:], x._zero())


def total_power_sum(x: Seq | Sequence, q) -> Scalar:
    x = as_seq(x)
    return sum(power_cells(x, q), x._zero())


def common_mode(*seqs: Seq) -> Mode:
    return Mode.FLOAT if any(s.mode is Mode.FLOAT for s in seqs) else Mode.EXACT


def coerce(*seqs: Seq) -> tuple[Seq, ...]:
    """Bring sequences to a common mode (float wins)."""
    if common_mode(*seqs) is Mode.FLOAT:
        return tuple(s.to_float() for s in seqs)
    return seqs

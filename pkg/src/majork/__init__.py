"""Majorization, K-functionals and Procedure P on finitely supported sequences."""
from .core import *  # noqa: F401,F403
from .errors import (
    ArithmeticModeMismatch,
    DimensionMismatch,
    InvariantViolation,
    MajorkError,
    NegativeCell,
    NoConvergence,
    PremiseViolated,
)

__version__ = "0.1.0"

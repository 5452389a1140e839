"""Exception types shared across the package."""


class MajorkError(Exception):
    """Base class for every error raised by majork."""


class ArithmeticModeMismatch(MajorkError):
    """An operation cannot be carried out exactly in rational mode."""


class NegativeCell(MajorkError):
    """A step function with a negative cell was raised to a real power."""


class PremiseViolated(MajorkError):
    """An input does not satisfy the hypothesis an operation requires.

    ``witness`` carries the offending index or point when one is known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(MajorkError):
    """A property that must hold by construction failed to hold.

    Raised with the failing clause name and the step (if any) so that the
    failure can be replayed.
    """

    def __init__(self, clause, message, step=None):
        super().__init__(f"[{clause}] {message}" + (f" (step {step})" if step is not None else ""))
        self.clause = clause
        self.step = step


class DimensionMismatch(MajorkError):
    """An operator was applied to a vector it cannot act on."""


class NoConvergence(MajorkError):
    """A numerical solve did not reach the requested accuracy."""

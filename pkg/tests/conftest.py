import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=100,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
nonneg_fractions = st.fractions(min_value=0, max_value=8, max_denominator=6)


def fseqs(min_size=0, max_size=12, signed=True):
    return st.lists(fractions if signed else nonneg_fractions, min_size=min_size, max_size=max_size)


def F(*vals):
    return tuple(Fraction(v) for v in vals)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

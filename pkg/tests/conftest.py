from __future__ import annotations

import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bcinterp.arith.laurent import LaurentPolynomial

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SYMS = ("qh", "th", "s", "x1", "x2")

coefs = st.fractions(min_value=-20, max_value=20, max_denominator=12).filter(lambda c: c != 0)
exps = st.tuples(*[st.integers(-3, 3) for _ in SYMS])


@st.composite
def laurent(draw, max_terms=5, allow_zero=True):
    items = draw(st.dictionaries(exps, coefs, min_size=0 if allow_zero else 1, max_size=max_terms))
    p = LaurentPolynomial.zero()
    for e, c in items.items():
        p = p + LaurentPolynomial.monomial(dict(zip(SYMS, e)), Fraction(c))
    return p


nonzero_laurent = laurent(allow_zero=False).filter(lambda p: not p.is_zero())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split(":")[0].split()[1])):
            terminalreporter.write_line(line)

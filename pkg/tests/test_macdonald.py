from __future__ import annotations

import pytest

from bcinterp.arith import parse, rf
from bcinterp.combinatorics import Partition, partitions_upto, reverse_tableaux
from bcinterp.macdonald import (
    dual_cauchy_check, expand_in_macdonald, is_symmetric, macdonald_p, pieri_weight_a, psi_skew,
    psi_skew_truncated, psi_tableau,
)

B = parse("(1 + q)*(1 - t)/(1 - q*t)")


def test_psi_examples():
    assert psi_skew((1,), ()) == 1
    assert psi_skew((2, 1), (2, 1)) == 1
    assert psi_skew((2,), (1,)) == B


def test_psi_matches_truncated_products():
    # exact finite form against the infinite-product definition truncated at numeric q, t
    from fractions import Fraction as F

    for lam, mu in [((2,), (1,)), ((3, 1), (2,)), ((2, 2), (2, 1)), ((3, 2), (2, 1))]:
        num = psi_skew(lam, mu).substitute_terms({"qh": (F(1, 3), {}), "th": (F(1, 5), {})}).constant_value()
        approx = psi_skew_truncated(lam, mu, F(1, 9), F(1, 25), factors=60)
        assert abs(float(num) - float(approx)) < 1e-12


def test_psi_tableau_examples():
    tabs = {dict(t.entries)[(1, 1)]: t for t in reverse_tableaux((2,), 2)}
    assert psi_tableau(tabs[1], 2) == 1
    two_one = [t for t in reverse_tableaux((2,), 2) if sorted(dict(t.entries).values()) == [1, 2]]
    assert psi_tableau(two_one[0], 2) == B


def test_macdonald_examples():
    assert macdonald_p((), 2) == 1
    assert macdonald_p((1,), 2) == parse("x1 + x2")
    assert macdonald_p((2,), 2) == parse("x1^2 + x2^2") + B * parse("x1*x2")


@pytest.mark.parametrize("mu", partitions_upto(3, 3))
def test_macdonald_symmetric(mu):
    assert is_symmetric(macdonald_p(mu, 3), 3)


def test_expand_examples():
    assert expand_in_macdonald(macdonald_p((2,), 2), 2) == {Partition((2,)): 1}
    c = expand_in_macdonald(parse("(x1 + x2)^2"), 2)
    assert c[Partition((2,))] == 1
    assert c[Partition((1, 1))] == 2 - B
    assert expand_in_macdonald(rf(1), 2) == {Partition(()): 1}


def test_pieri_weight_examples():
    assert pieri_weight_a((), (), 1) == 1
    assert pieri_weight_a((1,), (), 1) == 1
    assert pieri_weight_a((2,), (), 1) == 0


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2)])
def test_dual_cauchy(n, m):
    assert dual_cauchy_check(n, m)

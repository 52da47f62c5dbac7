from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcinterp.arith import LaurentPolynomial, SpecializationSpec, parse, rf, substitute
from bcinterp.interp import pstar
from bcinterp.qcalc import (
    ConstantTermInMeasure, Context, MuNNonzero, QIntegralBounds, bound_shift_verify, c_const,
    c_const_telescoped, default_limits, full_integrand, integral_rep_verify, integral_rhs,
    iterated_q_integral, pi_factors, pstar_integral, q_integral, q_number_inverse, weyl_products, x_star,
    y_star,
)

L = LaurentPolynomial


def bounds(lo, hi):
    return QIntegralBounds.of(parse(lo), parse(hi))


def test_q_integral_examples():
    assert q_integral(parse("z^2"), "z", bounds("v", "u")) == parse("(u^2 - v^2)*(1 - q)/(1 - q^2)")
    assert q_integral(parse("z - 1/z"), "z", bounds("v", "q/v")).is_zero()
    with pytest.raises(ConstantTermInMeasure):
        q_integral(parse("1 + z"), "z", bounds("v", "u"))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       st.fractions(F(1, 5), F(4, 5), max_denominator=9), st.fractions(F(1, 2), 2, max_denominator=9))
def test_q_integral_matches_jackson_sum(coefs, q, u):
    # (1 - q) sum_k f(u q^k) for monomials of positive degree; v is nearly 0
    f = sum((L.monomial({"z": l + 1}, c) for l, c in enumerate(coefs)), L.zero())
    exact = q_integral(f, "z", QIntegralBounds.of(F(1, 10 ** 30), u), q=q)
    series = (1 - q) * sum(sum(c * (u * q ** k) ** (l + 1) for l, c in enumerate(coefs)) for k in range(120))
    assert abs(float(exact.constant_value()) - float(series)) < 1e-9


def test_q_number_inverse():
    assert q_number_inverse(2) == parse("1/(1 + q)")
    assert q_number_inverse(-1) == parse("-q")
    assert q_number_inverse(3, F(1, 2)) == F(4, 7)


def test_weyl_product_examples():
    ctx = Context(0)
    V = weyl_products(2, 0, "V")
    a, b = x_star(ctx, 1, 2), x_star(ctx, 2, 2)
    assert V == (a ** 2 - a ** -2) * (b - b ** -1) - (b ** 2 - b ** -2) * (a - a ** -1)
    assert weyl_products(2, 0, "Pi") == 1
    assert weyl_products(2, 0, "D") == a + a ** -1 - b - b ** -1


def test_constant_examples():
    assert c_const((), 1, 0) == 1
    for m in range(3):
        assert c_const((m,), 2, 0) == parse(f"q^(1/2)*(1 - q)/(1 - q^{m + 1})")
    assert c_const((), 2, 1) == parse("q^(1/2)*(1 - q)*(1 - q)*(1 - q^2)/((1 - q^3)*(1 - q^4)*(1 - q^5))")


@pytest.mark.parametrize("mu,n,k", [((), 2, 0), ((2,), 2, 1), ((2, 1), 3, 1), ((1,), 3, 2), ((3, 1), 3, 0)])
def test_constant_forms_agree(mu, n, k):
    assert c_const(mu, n, k) == c_const_telescoped(mu, n, k)


@pytest.mark.parametrize("mu,k", [((), 0), ((1,), 0), ((2,), 0), ((), 1), ((1,), 1)])
def test_integral_identity_two_variables(mu, k):
    assert integral_rep_verify(mu, 2, k)


def test_integral_precondition():
    with pytest.raises(MuNNonzero):
        integral_rep_verify((1, 1), 2, 0)


def test_bound_shift():
    assert bound_shift_verify((), 2, 1)


@pytest.mark.parametrize("k", [1, 2])
def test_pi_vanishes_on_shifted_diagonal(k):
    ctx = Context(k)
    n = 2
    for r in range(1, 2 * k + 1):
        images = {"y1": (1, {"x1": 1, "qh": 2 * r})}
        assert L.zero() == pi_factors_product(ctx, n).substitute_terms(images)
    assert not pi_factors_product(ctx, n).substitute_terms({"y1": (1, {"x1": 1, "qh": 4 * k + 2})}).is_zero()


def pi_factors_product(ctx, n):
    out = L.constant(1)
    for f in pi_factors(ctx, n, 1):
        out = out * f
    return substitute(out, SpecializationSpec.theta_spec(ctx.k))


def test_integration_order_three_variables():
    # iterated integration in either order equals the moment computation
    spec = SpecializationSpec.of(qh=F(2, 3), s=F(5, 7))
    ctx = Context(0, spec)
    f = full_integrand((1,), 3, 0, spec)
    limits = default_limits(ctx, 3)
    q = ctx.q()
    a = iterated_q_integral(f, limits, q)
    b = iterated_q_integral(f, list(reversed(limits)), q)
    assert a == b
    assert a == integral_rhs((1,), 3, 0, spec)


@pytest.mark.parametrize("mu,n,k", [((1,), 1, 0), ((2,), 1, 1), ((1,), 2, 0), ((1, 1), 2, 0), ((2, 1), 2, 1)])
def test_integral_route_matches_comb(mu, n, k):
    expected = substitute(pstar(mu, n), SpecializationSpec.theta_spec(k))
    assert pstar_integral(mu, n, k).value == expected


def test_integral_route_numeric():
    spec = SpecializationSpec.of(qh=F(2, 3), s=F(5, 7))
    theta = SpecializationSpec.theta_spec(0)
    expected = substitute(substitute(pstar((1,), 3), theta), spec)
    assert pstar_integral((1,), 3, 0, spec).value == expected

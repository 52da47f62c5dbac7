from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcinterp.arith import LaurentPolynomial, SpecializationSpec, parse, rf, substitute
from bcinterp.combinatorics import Partition, partitions_upto
from bcinterp.interp import (
    DegreeExceeded, NotInAlgebra, PreconditionError, StarVariables, ZeroCoordinate, branch_coeff,
    eval_at, in_algebra, tail_vanishing_check, limit_check, newton_expand, norm_H, pieri_coeff, pstar,
    pstar_branch, pstar_comb, pstar_solve, top_term_check, u_inversion, value_at, verify_cauchy,
    verify_pieri, verify_shift_props,
)
from bcinterp.refute import f_closed_form

B = parse("(1 + q)*(1 - t)/(1 - q*t)")
SMALL = [(mu, n) for n in (1, 2) for mu in partitions_upto(3, n)]


def test_norm_H_examples():
    assert norm_H((), 2) == 1
    assert norm_H((1,), 1) == parse("(q - 1)*(s^2*q - 1)/(q*s^2)")
    assert norm_H((2,), 1) == parse("(q^2 - 1)*(q - 1)*(s^2*q^2 - 1)*(s^2*q^3 - 1)/(q^4*s^4)")


def test_comb_examples():
    assert pstar_comb((), 3).value == 1
    assert pstar_comb((1,), 1).value == parse("(x1 - 1)*(1 - 1/(s^2*x1))")
    two = parse("(x1 - 1)*(1 - 1/(t^2*s^2*x1)) + (x2 - 1)*(1 - 1/(s^2*x2))/t")
    assert pstar_comb((1,), 2).value == two
    assert pstar_solve((1,), 2).value == two


@pytest.mark.parametrize("m", range(5))
def test_closed_form_one_variable(m):
    assert pstar((m,), 1) == rf(f_closed_form(m))


def test_branch_coeff_examples():
    assert branch_coeff((2, 1), (2, 1), 2) == parse("t^(-3)")
    assert branch_coeff((1,), (), 1) == parse("(u - 1)*(1 - 1/(s^2*u))")
    assert branch_coeff((2,), (1,), 2) == B / parse("t") * parse("(u - q)*(1 - 1/(q*t^2*s^2*u))")
    assert branch_coeff((3,), (2, 2), 3) == 0


@pytest.mark.parametrize("mu,n", SMALL)
def test_three_routes_agree(mu, n):
    comb = pstar_comb(mu, n)
    assert comb == pstar_branch(mu, n)
    assert comb == pstar_solve(mu, n)


def test_evaluation_examples():
    P1 = pstar_comb((1,), 1)
    assert eval_at(P1, Partition(())).is_zero()
    assert eval_at(P1, Partition((1,))) == norm_H((1,), 1)
    assert value_at((2, 1), (1,), 2).is_zero()
    with pytest.raises(ZeroCoordinate):
        eval_at(P1, [0])


@pytest.mark.parametrize("mu,n", SMALL)
def test_value_at_definition(mu, n):
    P = pstar_comb(mu, n)
    for lam in partitions_upto(Partition(mu).weight + 1, n):
        direct = eval_at(P, lam)
        assert value_at(mu, lam, n) == direct


def test_star_variables_generate_symmetry():
    P = pstar((2, 1), 2)
    sv = StarVariables(2)
    for g in sv.generators():
        assert P.substitute_terms(g) == P
    assert in_algebra(P, 2)
    assert not in_algebra(rf(parse("x1")), 2)


def test_newton_examples():
    assert newton_expand(pstar((2, 1), 2), 2, 3) == {Partition((2, 1)): 1}
    assert newton_expand(rf(1), 2, 0) == {Partition(()): 1}
    sv = StarVariables(2)
    stars = [LaurentPolynomial.monomial(sv.star(i)[1]) for i in (1, 2)]
    f = sum((x + x ** -1 for x in stars), LaurentPolynomial.zero())
    coeffs = newton_expand(rf(f), 2, 1)
    rebuilt = sum((c * pstar(mu, 2) for mu, c in coeffs.items()), rf(0))
    assert rebuilt == rf(f)


def test_newton_rejects_high_degree():
    with pytest.raises(DegreeExceeded):
        newton_expand(pstar((2,), 1), 1, 1)


@pytest.mark.parametrize("mu,n,which", [((1, 1), 2, "q_shift"), ((1,), 2, "restriction"), ((2,), 1, "inversion"),
                                        ((2, 1), 2, "q_shift"), ((2,), 3, "restriction"), ((2, 1), 3, "inversion")])
def test_shift_identities(mu, n, which):
    assert verify_shift_props(mu, n, which)


def test_shift_preconditions():
    with pytest.raises(PreconditionError):
        verify_shift_props((1,), 2, "q_shift")
    with pytest.raises(PreconditionError):
        verify_shift_props((1, 1), 2, "restriction")


@pytest.mark.parametrize("mu,n", SMALL)
def test_top_term_and_limits(mu, n):
    assert top_term_check(mu, n)
    assert limit_check(mu, n, "s_infinity")
    assert limit_check(mu, n, "s_zero")


def test_u_inversion_of_branch_coefficients():
    inv = u_inversion(2)
    for nu in partitions_upto(3, 1):
        c = branch_coeff((2, 1), nu, 2)
        assert c.substitute_terms(inv) == c


def test_tail_vanishing():
    assert tail_vanishing_check((2, 1), 2, 4)


def test_pieri_examples():
    assert pieri_coeff((), (), 1) == parse("(u + 1)*(1 + 1/(s^2*u))")
    assert pieri_coeff((1,), (), 1) == 1
    assert pieri_coeff((3,), (), 1) == 0
    for mu, n in [((), 1), ((1,), 1), ((1,), 2)]:
        assert verify_pieri(mu, n)


def test_cauchy_examples():
    for n, m in [(1, 1), (2, 1), (2, 2)]:
        assert verify_cauchy(n, m)
    lhs = parse("x1 - y1 + 1/(s^2*x1) - 1/(s^2*y1)")
    from bcinterp.interp import cauchy_sides

    a, b = cauchy_sides(1, 1)
    assert a == lhs and b == lhs


@settings(max_examples=8)
@given(st.sampled_from([(2,), (1, 1), (2, 1), (3,)]), st.integers(0, 10_000))
def test_solve_at_random_specialization(mu, seed):
    from bcinterp.verify import random_specs

    spec = random_specs(seed, 1)[0]
    assert substitute(pstar(mu, 2), spec) == pstar_solve(mu, 2, spec).value

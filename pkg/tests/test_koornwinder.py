from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from bcinterp.arith import LaurentPolynomial, RationalFunction, SpecializationSpec, parse, rf
from bcinterp.interp import norm_H, pstar, value_at
from bcinterp.koornwinder import (
    AH, DegenerateEigenvalue, EvaluationTable, KoornwinderParams, MissingEvaluation, NotSelfDual, askey_wilson,
    aw_operator, binomial_at_ones, binomial_rhs, binomial_top_term, dual_params, evaluation_table_n1, sample_params,
    verify_b_vanishing_n1, verify_binomial_n1, verify_duality_n1,
)

L = LaurentPolynomial


def test_dual_parameter_examples():
    d = dual_params(KoornwinderParams(1))
    assert d.a(1) == parse("a1^(1/2)*a2^(1/2)*a3^(1/2)*a4^(1/2)").num
    assert d.a(2) == parse("a1^(1/2)*a2^(1/2)*a3^(-1/2)*a4^(-1/2)").num
    assert dual_params(d).exps == KoornwinderParams(1).exps
    equal = KoornwinderParams(1, alphas=(F(2, 3),) * 4)
    de = dual_params(equal)
    assert de.a(1) == equal.a(1) ** 2
    assert de.a(2) == de.a(3) == de.a(4) == 1


def test_rho_vectors():
    p = KoornwinderParams(2)
    assert p.rho(dual=False)[0] == parse("a1*t").num
    assert p.rho(dual=True)[1] == dual_params(p).a(1)


def test_evaluation_table_json_roundtrip():
    e = EvaluationTable.symbolic(3, 2)
    back = EvaluationTable.from_json(e.to_json())
    assert set(back.entries) == set(e.entries)
    assert all(back[k] == v for k, v in e.entries.items())
    with pytest.raises(MissingEvaluation):
        EvaluationTable()[(1,)]
    with pytest.raises(ValueError):
        EvaluationTable()[(1,)] = 0


def test_binomial_small_cases():
    p = KoornwinderParams(1)
    e = EvaluationTable.symbolic(1, 1)
    assert binomial_rhs((), p, e) == 1
    dual = dual_params(p)
    at = value_at((1,), (1,), 1).substitute_terms({"s": dual.image(1)})
    h = norm_H((1,), 1).substitute_terms({"s": dual.image(1)})
    P1 = parse("(x1 - 1)*(1 - 1/(a1^2*x1))")
    expected = 1 + rf(p.a(1)) * at * P1 / (h * e[(1,)])
    assert binomial_rhs((1,), p, e) == expected


def _four_phi_three(m, p):
    """Explicit terminating basic hypergeometric series in z (numeric parameters)."""
    a, b, c, d = (x.constant_value() for x in p.koornwinder_abcd())
    q = p.apply(L.monomial({"qh": 2})).constant_value()
    z = L.symbol("x1")

    def poch(x, k):
        out = F(1)
        for j in range(k):
            out *= 1 - x * q ** j
        return out

    total = L.zero()
    for k in range(m + 1):
        coef = poch(q ** -m, k) * poch(a * b * c * d * q ** (m - 1), k) * q ** k
        coef /= poch(a * b, k) * poch(a * c, k) * poch(a * d, k) * poch(q, k)
        term = L.constant(coef)
        for j in range(k):
            term = term * (1 - z * (a * q ** j)) * (1 - z ** -1 * (a * q ** j))
        total = total + term
    return total


@pytest.mark.parametrize("seed", range(3))
def test_askey_wilson_against_series(seed):
    p = sample_params(random.Random(seed))
    for m in range(4):
        aw = askey_wilson(m, p)
        series = _four_phi_three(m, p)
        lead = series.collect(["x1"])[(m,)]
        assert aw.poly == rf(series) / rf(lead)
        assert aw.e == rf(1) / rf(lead)  # the series is 1 at z = a_1


def test_askey_wilson_is_eigenfunction():
    p = sample_params(random.Random(7))
    for m in range(4):
        aw = askey_wilson(m, p)
        assert rf(aw_operator(aw.poly, p)) == aw.poly * aw.eigenvalues[m]
    assert askey_wilson(0, p).poly == 1 and askey_wilson(0, p).e == 1


def test_degenerate_eigenvalue():
    # q = 1 makes every eigenvalue vanish
    p = KoornwinderParams(1, alphas=(F(1, 2), F(1, 3), F(1, 5), F(1, 7)), spec=SpecializationSpec.of(qh=1, th=F(1, 2)))
    with pytest.raises(DegenerateEigenvalue):
        askey_wilson(2, p)


def test_binomial_n1_small():
    assert verify_binomial_n1(1, points=2, seed=3)
    assert verify_binomial_n1(3, points=2, seed=4)


def test_b_vanishing():
    assert verify_b_vanishing_n1(4, seed=2)


def test_duality_examples():
    assert verify_duality_n1(0, 0)
    assert verify_duality_n1(1, 2)
    with pytest.raises(NotSelfDual):
        verify_duality_n1(1, 2, p=sample_params(random.Random(1)))


def test_sampled_points_are_generic():
    from bcinterp.arith import check_generic

    rng = random.Random(11)
    for _ in range(5):
        p = sample_params(rng)
        q0 = p.spec.images["qh"][0] ** 2
        t0 = p.spec.images["th"][0] ** 2
        assert check_generic(q0, t0, p.alphas[0] ** 2, p.alphas)


@pytest.mark.parametrize("lam,n", [((1,), 1), ((2,), 1), ((1,), 2), ((1, 1), 2)])
def test_binomial_structure(lam, n):
    e = EvaluationTable.symbolic(sum(lam), n)
    p = KoornwinderParams(n)
    assert binomial_at_ones(lam, p, e)
    assert binomial_top_term(lam, p, e)


def test_fixture_driven_path_n2():
    # externally supplied evaluations plug into the n >= 2 binomial sum
    e = EvaluationTable()
    e[(1,)] = parse("e1")
    e[(2,)] = parse("e2")
    e[(1, 1)] = parse("e11")
    loaded = EvaluationTable.from_json(e.to_json())
    p = KoornwinderParams(2)
    value = binomial_rhs((1, 1), p, loaded)
    assert isinstance(value, RationalFunction)
    assert binomial_at_ones((1, 1), p, loaded)
    with pytest.raises(MissingEvaluation):
        binomial_rhs((2, 1), p, loaded)


def test_binomial_weyl_invariance():
    # invariant under signed permutations of z = x q^rho', i.e. the starred
    # variables with s = a_1
    from bcinterp.interp import StarVariables

    p = KoornwinderParams(2)
    e = EvaluationTable.symbolic(2, 2)
    f = binomial_rhs((2,), p, e)
    for g in StarVariables(2).generators():
        images = {}
        for var, (c, exps) in g.items():
            exps = dict(exps)
            s_pow = exps.pop("s", 0)
            if s_pow:
                exps["ah1"] = exps.get("ah1", 0) + 2 * s_pow
            images[var] = (c, exps)
        assert f.substitute_terms(images) == f

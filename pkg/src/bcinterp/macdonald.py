"""A-type Macdonald polynomials and their branching and Pieri weights."""

from __future__ import annotations

from functools import lru_cache

from .arith import symbols as sym
from .arith.field import RationalFunction, rf
from .arith.laurent import LaurentPolynomial
from .arith.pochhammer import qt, telescope
from .combinatorics import (
    EMPTY,
    Partition,
    ReverseTableau,
    horizontal_strip,
    partitions_in_box,
    plus_one,
    reverse_tableaux,
    tilde,
)


class NotSymmetric(ValueError):
    pass


ZERO = RationalFunction.const(0)
ONE = RationalFunction.const(1)


def _poch_terms(mu, lam):
    """Infinite Pochhammer factors of the skew weight, as (coef, exps, power)."""
    terms = []

    def add(a, b, e):
        terms.append((1, {"qh": 2 * a, "th": 2 * b}, e))

    ell = len(mu)
    for i in range(1, ell + 1):
        for j in range(i, ell + 1):
            mi, mj = mu.part(i), mu.part(j)
            li, lj1 = lam.part(i), lam.part(j + 1)
            add(mi - mj, j - i + 1, 1)
            add(mi - mj + 1, j - i, -1)
            add(li - lj1, j - i + 1, 1)
            add(li - lj1 + 1, j - i, -1)
            add(li - mj + 1, j - i, 1)
            add(li - mj, j - i + 1, -1)
            add(mi - lj1 + 1, j - i, 1)
            add(mi - lj1, j - i + 1, -1)
    return terms


@lru_cache(maxsize=None)
def psi_skew(lam, mu) -> RationalFunction:
    """Branching weight of the horizontal strip lam/mu (zero if not a strip).

    The infinite products of the weight telescope to finite ones.
    """
    lam, mu = Partition(lam), Partition(mu)
    if not horizontal_strip(lam, mu):
        return ZERO
    if lam == mu or not mu:
        return ONE
    return telescope(_poch_terms(mu, lam))


def psi_skew_truncated(lam, mu, q, t, factors=50):
    """Numeric oracle: the weight with every infinite product cut after
    ``factors`` factors (q, t rationals of modulus < 1)."""
    from fractions import Fraction

    lam, mu = Partition(lam), Partition(mu)
    out = Fraction(1)
    for coef, exps, e in _poch_terms(mu, lam):
        m = Fraction(q) ** (exps["qh"] // 2) * Fraction(t) ** (exps["th"] // 2)
        val = Fraction(1)
        for _ in range(factors):
            val *= 1 - m
            m *= q
        out *= val ** e
    return out


def psi_tableau(T: ReverseTableau, n: int) -> RationalFunction:
    """Product of strip weights along the tableau's chain."""
    chain = T.chain(n)
    out = ONE
    for inner, outer in zip(chain, chain[1:]):
        out = out * psi_skew(outer, inner)
    return out


def _xmono(n, counts) -> LaurentPolynomial:
    return LaurentPolynomial.monomial({f"x{i}": c for i, c in enumerate(counts, 1) if c})


@lru_cache(maxsize=None)
def macdonald_p(mu, n: int) -> RationalFunction:
    """P_mu(x_1..x_n; q, t) from the tableau sum, as a polynomial in x with
    coefficients in Q(q, t)."""
    mu = Partition(mu)
    if len(mu) > n:
        return ZERO
    groups: dict = {}
    for T in reverse_tableaux(mu, n):
        counts = [0] * n
        for _, v in T.entries:
            counts[v - 1] += 1
        groups.setdefault(tuple(counts), []).append(psi_tableau(T, n))
    items = []
    for counts in sorted(groups):
        w = RationalFunction.sum(groups[counts])
        items.append(w * _xmono(n, counts))
    return RationalFunction.sum(items)


def x_coefficients(f: RationalFunction, n: int) -> dict:
    """Split ``f`` into ``{x-exponent tuple: coefficient}``; the denominator
    must not involve x."""
    names = sym.xs(n)
    for fac in f.den:
        if set(fac.symbols_used()) & set(names):
            raise ValueError("denominator involves the variables")
    out = {}
    for e, c in f.num.collect(names).items():
        out[e] = RationalFunction._raw(c, dict(f.den))._cancel()
    return out


def is_symmetric(f: RationalFunction, n: int, names=None) -> bool:
    names = list(names or sym.xs(n))
    for a, b in zip(names, names[1:]):
        if f.rename({a: b, b: a}) != f:
            return False
    return True


def expand_in_macdonald(f, n: int) -> dict:
    """Coefficients c_lam with f = sum c_lam P_lam(x_1..x_n; q, t)."""
    f = rf(f)
    if not is_symmetric(f, n):
        raise NotSymmetric("input is not symmetric in the variables")
    names = sym.xs(n)
    out = {}
    guard = 0
    while not f.is_zero():
        coeffs = f.num.collect(names)
        lead = max(coeffs)
        if any(e < 0 for e in lead):
            raise NotSymmetric("negative exponents cannot be expanded in P_lam")
        lam = Partition(lead)
        c = RationalFunction._raw(coeffs[lead], dict(f.den))._cancel()
        out[lam] = out.get(lam, ZERO) + c
        f = f - c * macdonald_p(lam, n)
        guard += 1
        if guard > 10000:
            raise RuntimeError("expansion did not terminate")
    return {lam: c for lam, c in sorted(out.items(), key=lambda kv: kv[0].sort_key()) if not c.is_zero()}


@lru_cache(maxsize=None)
def _pieri_expansion(mu, n):
    u = LaurentPolynomial.symbol("u")
    lhs = rf(1)
    for i in range(1, n + 1):
        lhs = lhs * rf(u + LaurentPolynomial.symbol(f"x{i}"))
    return expand_in_macdonald(lhs * macdonald_p(mu, n), n)


def pieri_weight_a(lam, mu, n: int) -> RationalFunction:
    """psi'_{lam/mu}: coefficient of u^{|mu+1/lam|} P_lam in prod(u + x_i) P_mu."""
    lam, mu = Partition(lam), Partition(mu)
    if len(mu) > n or len(lam) > n:
        return ZERO
    top = plus_one(mu, n)
    if not (lam.contains(mu) and top.contains(lam)):
        return ZERO
    c = _pieri_expansion(mu, n).get(lam, ZERO)
    k = top.weight - lam.weight
    w = c / rf(LaurentPolynomial.symbol("u", k))
    if "u" in w.symbols_used():
        raise ArithmeticError("Pieri coefficient is not a pure power of u")
    return w


def swap_qt(f):
    """Exchange the roles of q and t."""
    return f.rename({"qh": "th", "th": "qh"})


def x_to_y(f, n: int):
    return f.rename({f"x{i}": f"y{i}" for i in range(1, n + 1)})


def dual_cauchy_sides(n: int, m: int):
    lhs = rf(1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            lhs = lhs * rf(LaurentPolynomial.symbol(f"x{i}") - LaurentPolynomial.symbol(f"y{j}"))
    terms = []
    for mu in partitions_in_box(n, m):
        mt = tilde(mu, n, m)
        sign = -1 if mt.weight % 2 else 1
        right = x_to_y(swap_qt(macdonald_p(mt, m)), m)
        terms.append(macdonald_p(mu, n) * right * sign)
    return lhs, RationalFunction.sum(terms)


def dual_cauchy_check(n: int, m: int) -> bool:
    """prod(x_i - y_j) = sum (-1)^|mu~| P_mu(x; q, t) P_mu~(y; t, q)."""
    lhs, rhs = dual_cauchy_sides(n, m)
    return lhs == rhs

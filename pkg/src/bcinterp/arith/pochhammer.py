"""Ratios of infinite q-Pochhammer symbols that telescope to finite products.

``(m)_inf = (1 - m)(1 - q m)(1 - q^2 m)...`` with ``q = qh^2``.  A product
``prod (m_k)_inf ** e_k`` is finite exactly when, within every class of
monomials differing by integer powers of q, the exponents sum to zero.  Each
class then collapses onto its lowest member:
``(q^a m)_inf = (q^c m)_inf / prod_{c <= l < a} (1 - q^l m)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .field import RationalFunction
from .laurent import LaurentPolynomial, prod


class NotTelescoping(ValueError):
    pass


def monomial(exps: Mapping[str, int], coef=1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(exps, coef)


def qt(a: int = 0, b: int = 0, **others) -> LaurentPolynomial:
    """The monomial ``q^a t^b`` (times any extra symbol powers)."""
    exps = {"qh": 2 * a, "th": 2 * b}
    exps.update(others)
    return monomial(exps)


def _class_key(exps: Mapping[str, int], coef):
    rest = tuple(sorted((k, v) for k, v in exps.items() if k != "qh" and v))
    return (exps.get("qh", 0) % 2, rest, Fraction(coef))


def finite_factors(terms: Iterable[tuple]) -> dict:
    """Collapse ``prod (m)_inf ** e`` to ``{l-shifted monomial m': exponent}``
    meaning ``prod (1 - m') ** exponent``.

    ``terms`` holds ``(coef, exps, e)`` with ``m = coef * prod sym^exps``.
    """
    classes: dict = {}
    for coef, exps, e in terms:
        if e == 0:
            continue
        key = _class_key(exps, coef)
        pos = exps.get("qh", 0) // 2
        classes.setdefault(key, []).append((pos, e))
    out: dict = {}
    for (parity, rest, coef), members in classes.items():
        if sum(e for _, e in members) != 0:
            raise NotTelescoping(f"unbalanced class {dict(rest)} with q-parity {parity}")
        low = min(p for p, _ in members)
        for pos, e in members:
            for l in range(low, pos):
                key = (coef, (("qh", 2 * l + parity),) + rest)
                out[key] = out.get(key, 0) - e
    return {k: v for k, v in out.items() if v}


def telescope(terms: Iterable[tuple]) -> RationalFunction:
    """Evaluate a telescoping Pochhammer product as a rational function."""
    factors = finite_factors(terms)
    num, den = [], []
    one = LaurentPolynomial.constant(1)
    for (coef, exps), e in sorted(factors.items(), key=lambda kv: repr(kv[0])):
        f = one - monomial(dict(exps), coef)
        if f.is_zero():
            raise ZeroDivisionError("factor (1 - 1) in a Pochhammer product")
        if e > 0:
            num.append(f ** e)
        else:
            den.append((f, -e))
    return RationalFunction.from_factored(prod(num), den)


def finite_pochhammer(m: LaurentPolynomial, k: int) -> LaurentPolynomial:
    """``(m; q)_k = (1 - m)(1 - q m)...(1 - q^(k-1) m)`` for k >= 0."""
    q = monomial({"qh": 2})
    one = LaurentPolynomial.constant(1)
    return prod(one - m * q ** l for l in range(k))


def truncated_value(coef, exps, values: Mapping[str, Fraction], factors: int = 50) -> Fraction:
    """Numeric value of ``(m)_inf`` truncated after ``factors`` factors
    (test oracle; ``values`` assigns rationals to the symbols)."""
    m = Fraction(coef)
    for k, v in exps.items():
        m *= Fraction(values[k]) ** v
    q = Fraction(values["qh"]) ** 2
    out = Fraction(1)
    for _ in range(factors):
        out *= 1 - m
        m *= q
    return out

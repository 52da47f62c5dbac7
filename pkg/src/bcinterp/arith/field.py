"""Exact rational functions over Q in the generator and variable symbols.

An element is ``num / prod(f ** k for f, k in den)`` where ``num`` is a Laurent
polynomial and every denominator factor ``f`` is *normal*: integral,
primitive, free of monomial factors, with positive leading coefficient in the
graded-lex order.  A product of normal polynomials is again normal, so the
expanded denominator is the normal form asked of a reduced fraction.

Binomials ``m**g - 1`` and ``m**g + 1`` are split into cyclotomic pieces when
they enter a denominator.  That cheap partial factorization is what lets the
many ``(1 - q^a t^b)`` denominators of the Macdonald machinery cancel.
Equality never relies on it: it is decided by cross-multiplication.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import symbols as sym
from .laurent import LaurentPolynomial, NotDivisible, norm_coef, prod

# numerators larger than this are not trial-divided by denominator factors
CANCEL_LIMIT = 4000


class DivisionByZero(ZeroDivisionError):
    pass


# -- cyclotomic splitting of binomials ------------------------------------

@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple:
    """Integer coefficients of the d-th cyclotomic polynomial, low degree first."""
    # x^d - 1 divided by all Phi_e for proper divisors e
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _int_poly_div(num, list(_cyclotomic(e)))
    return tuple(num)


def _int_poly_div(a, b):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bc in enumerate(b):
            a[i + j] -= c * bc
    assert not any(a), "inexact cyclotomic division"
    return out


def _divisors(g):
    return [d for d in range(1, g + 1) if g % d == 0]


def _split_binomial(f: LaurentPolynomial):
    """Split a normal binomial ``X^a +- X^b`` (unit coefficients) into
    cyclotomic factors of a primitive monomial.  Returns None if ``f`` is not
    of that shape or does not split further."""
    if len(f.terms) != 2:
        return None
    (ea, ca), (eb, cb) = f.sorted_terms()
    if abs(ca) != 1 or abs(cb) != 1:
        return None
    v = [x - y for x, y in zip(ea, eb)]
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    sign = ca * cb  # +1 for X^a + X^b, -1 for X^a - X^b
    if sign < 0:
        ds = _divisors(g)
    else:
        ds = [d for d in _divisors(2 * g) if g % d != 0]
    if len(ds) == 1:
        return None
    step = tuple(x // g for x in v)
    alph = f.alphabet
    pieces = []
    for d in ds:
        coefs = _cyclotomic(d)
        terms = {}
        for k, c in enumerate(coefs):
            if c:
                terms[tuple(k * x for x in step)] = c
        pieces.append(LaurentPolynomial._raw(terms, alph))
    return pieces


def _normal_factors(p: LaurentPolynomial):
    """Write ``p = scale * prod(factors)`` with normal factors.

    Returns ``(scale, [factor, ...])`` where ``scale`` is a coefficient times
    a monomial (a LaurentPolynomial with one term).
    """
    c, mono, prim = p.content_split()
    scale = LaurentPolynomial.monomial(mono, c)
    if prim.is_constant():
        return scale, []
    prim = prim.trim()
    pieces = _split_binomial(prim)
    if pieces is None:
        return scale, [prim]
    factors = []
    for piece in pieces:
        s2, fs = _normal_factors(piece)
        scale = scale * s2
        factors.extend(fs)
    return scale, factors


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num=0, den: Mapping | None = None):
        self.num = _as_poly(num)
        self.den = {} if den is None else dict(den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_pair(cls, num, den=1, cancel=True):
        """Normalize the fraction ``num / den``."""
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            return cls._raw(LaurentPolynomial.zero(), {})
        scale, factors = _normal_factors(den)
        (e, c), = scale.terms.items()
        inv = LaurentPolynomial._raw({tuple(-x for x in e): norm_coef(Fraction(1) / c)}, scale.alphabet)
        out = {}
        for f in factors:
            out[f] = out.get(f, 0) + 1
        r = cls._raw(num * inv, out)
        return r._cancel() if cancel else r

    @classmethod
    def from_factored(cls, num, den_factors, cancel=True):
        """``num / prod(f ** k)`` normalizing each factor separately, so the
        factor structure survives (and can cancel later)."""
        num = _as_poly(num)
        out: dict = {}
        scale = LaurentPolynomial.constant(1)
        for f, k in den_factors:
            f = _as_poly(f)
            if f.is_zero():
                raise DivisionByZero("zero denominator factor")
            sc, factors = _normal_factors(f)
            scale = scale * sc ** k
            for g in factors:
                out[g] = out.get(g, 0) + k
        if num.is_zero():
            return cls._raw(LaurentPolynomial.zero(), {})
        r = cls._raw(num * scale ** -1, out)
        return r._cancel() if cancel else r

    @classmethod
    def const(cls, c):
        return cls._raw(LaurentPolynomial.constant(c), {})

    @classmethod
    def symbol(cls, name, power=1):
        return cls._raw(LaurentPolynomial.symbol(name, power), {})

    # -- views ------------------------------------------------------------
    @property
    def numerator(self) -> LaurentPolynomial:
        return self.num

    @property
    def denominator(self) -> LaurentPolynomial:
        return prod(f ** k for f, k in self._den_items())

    def _den_items(self):
        return sorted(self.den.items(), key=lambda fk: _factor_key(fk[0]))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return not self.den

    def as_polynomial(self) -> LaurentPolynomial:
        if self.den:
            r = self._cancel(force=True)
            if r.den:
                raise NotDivisible("rational function has a genuine denominator")
            return r.num
        return self.num

    def is_constant(self):
        return not self.den and self.num.is_constant()

    def constant_value(self):
        if self.den:
            r = self._cancel(force=True)
            if r.den:
                raise ValueError("not a constant")
            return r.num.constant_value()
        return self.num.constant_value()

    def symbols_used(self):
        names = set(self.num.symbols_used())
        for f in self.den:
            names.update(f.symbols_used())
        return sym.canonical(names)

    # -- cancellation -----------------------------------------------------
    def _cancel(self, force=False):
        if not self.den or self.num.is_zero():
            if self.num.is_zero():
                return RationalFunction._raw(self.num, {})
            return self
        if not force and len(self.num.terms) > CANCEL_LIMIT:
            return self
        num = self.num
        den = dict(self.den)
        for f in sorted(den, key=lambda f: len(f.terms)):
            k = den[f]
            while k:
                try:
                    num = num.exact_div(f)
                except NotDivisible:
                    break
                k -= 1
            if k:
                den[f] = k
            else:
                del den[f]
        return RationalFunction._raw(num, den)

    def reduce(self):
        """Trial-divide the numerator by every denominator factor."""
        return self._cancel(force=True)

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPolynomial):
            return RationalFunction._raw(other, {})
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction.sum([self, other])

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction.sum([self, -other])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction.sum([other, -self])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction._raw(LaurentPolynomial.zero(), {})
        den = dict(self.den)
        for f, k in other.den.items():
            den[f] = den.get(f, 0) + k
        r = RationalFunction._raw(self.num * other.num, den)
        if self.den or other.den:
            # only factors shared with the other operand's numerator can cancel
            r = r._cancel()
        return r

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        r = RationalFunction.from_pair(prod(f ** k for f, k in self._den_items()), self.num, cancel=False)
        return r._cancel()

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise DivisionByZero("division by zero")
        if other.num.is_monomial() or other.num.is_constant():
            (e, c), = other.num.terms.items()
            inv = LaurentPolynomial._raw({tuple(-x for x in e): norm_coef(Fraction(1) / c)}, other.num.alphabet)
            num = self.num * inv
            den = dict(self.den)
            extra = []
            for f, k in other.den.items():
                extra.append(f ** k)
            r = RationalFunction._raw(num * prod(extra) if extra else num, den)
            return r._cancel() if other.den else r
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RationalFunction.const(1)
        return RationalFunction._raw(self.num ** k, {f: m * k for f, m in self.den.items()})

    @staticmethod
    def sum(items: Iterable) -> "RationalFunction":
        """Sum over a common denominator (least common multiple of factors)."""
        items = [RationalFunction._coerce(x) for x in items]
        items = [x for x in items if not x.num.is_zero()]
        if not items:
            return RationalFunction._raw(LaurentPolynomial.zero(), {})
        if len(items) == 1:
            return items[0]
        lcm: dict = {}
        for x in items:
            for f, k in x.den.items():
                if lcm.get(f, 0) < k:
                    lcm[f] = k
        if not lcm:
            total = LaurentPolynomial.zero()
            for x in items:
                total = total + x.num
            return RationalFunction._raw(total, {})
        total = LaurentPolynomial.zero()
        for x in items:
            extra = [f ** (k - x.den.get(f, 0)) for f, k in lcm.items() if k > x.den.get(f, 0)]
            total = total + (x.num * prod(extra) if extra else x.num)
        return RationalFunction._raw(total, lcm)._cancel()

    @staticmethod
    def product(items: Iterable) -> "RationalFunction":
        out = RationalFunction.const(1)
        for x in items:
            out = out * x
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self.num == other.num
        # multiply each side by the part of the lcm it lacks
        lcm = dict(self.den)
        for f, k in other.den.items():
            lcm[f] = max(lcm.get(f, 0), k)
        left = [f ** (k - self.den.get(f, 0)) for f, k in lcm.items() if k > self.den.get(f, 0)]
        right = [f ** (k - other.den.get(f, 0)) for f, k in lcm.items() if k > other.den.get(f, 0)]
        return self.num * prod(left) == other.num * prod(right)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    # -- substitution -----------------------------------------------------
    def substitute_terms(self, images):
        num = self.num.substitute_terms(images)
        if not self.den:
            return RationalFunction._raw(num, {})
        den = []
        for f, k in self._den_items():
            g = f.substitute_terms(images)
            if g.is_zero():
                raise DivisionByZero("specialization hits a pole")
            den.append((g, k))
        return RationalFunction.from_factored(num, den, cancel=True)

    def rename(self, mapping):
        images = {k: (1, {v: 1}) for k, v in mapping.items()}
        return self.substitute_terms(images)

    def map_num(self, fn):
        """Apply a linear map to the numerator, keeping the denominator."""
        return RationalFunction._raw(fn(self.num), self.den)._cancel()

    # -- display ----------------------------------------------------------
    def __repr__(self):
        from .serialize import to_text

        return f"RationalFunction({to_text(self)!r})"

    def __str__(self):
        from .serialize import to_text

        return to_text(self)


def _factor_key(f: LaurentPolynomial):
    from .serialize import poly_to_text

    return (len(f.terms), poly_to_text(f))


def _as_poly(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolynomial.constant(x)
    if isinstance(x, str):
        return LaurentPolynomial.symbol(x)
    raise TypeError(f"cannot make a polynomial from {type(x).__name__}")


def rf(x) -> RationalFunction:
    """Coerce numbers, symbol names and polynomials to field elements."""
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, str):
        return RationalFunction.symbol(x)
    return RationalFunction._raw(_as_poly(x), {})


def one_minus(p) -> RationalFunction:
    """The field element ``1 - p``."""
    return rf(LaurentPolynomial.constant(1) - _as_poly(p))

"""Substitution homomorphisms and the genericity test for numeric parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import symbols as sym
from .field import DivisionByZero, RationalFunction
from .laurent import LaurentPolynomial


class IllFormedSpec(ValueError):
    pass


def _image(value):
    """Normalize a substitution target to ``(coef, {symbol: exponent})``."""
    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[1], Mapping):
        return Fraction(value[0]), {k: int(v) for k, v in value[1].items() if v}
    if isinstance(value, (int, Fraction)):
        return Fraction(value), {}
    if isinstance(value, str):
        from .serialize import parse

        value = parse(value)
    if isinstance(value, RationalFunction):
        if value.den:
            raise IllFormedSpec("substitution targets must be monomials or numbers")
        value = value.num
    if isinstance(value, LaurentPolynomial):
        if value.is_zero():
            return Fraction(0), {}
        if len(value.terms) != 1:
            raise IllFormedSpec("substitution targets must be monomials or numbers")
        (e, c), = value.terms.items()
        return Fraction(c), {n: x for n, x in zip(value.alphabet, e) if x}
    raise IllFormedSpec(f"unsupported substitution target {value!r}")


@dataclass(frozen=True)
class SpecializationSpec:
    """Simultaneous substitution of symbols by monomials or rationals.

    ``theta`` records ``t = q**theta`` when ``th`` is mapped to ``qh**theta``.
    """

    images: Mapping[str, tuple]
    theta: int | None = None

    def __post_init__(self):
        images = {}
        for k, v in dict(self.images).items():
            sym.symbol_rank(k)
            images[k] = _image(v)
        removed = {k for k, (c, e) in images.items() if not e}
        for k, (c, e) in images.items():
            bad = removed & set(e)
            if bad:
                raise IllFormedSpec(f"target of {k} mentions removed symbol(s) {sorted(bad)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def of(cls, theta=None, **images):
        return cls(images, theta)

    @classmethod
    def theta_spec(cls, k: int, extra: Mapping | None = None):
        """``t = q^(2k+1)``, i.e. ``th -> qh^(2k+1)``."""
        theta = 2 * k + 1
        images = {"th": (1, {"qh": theta})}
        images.update(extra or {})
        return cls(images, theta)

    def numeric(self):
        return {k: c for k, (c, e) in self.images.items() if not e}

    def __call__(self, x):
        return substitute(x, self)

    def describe(self):
        from .serialize import poly_to_text

        parts = []
        for k in sorted(self.images, key=sym.symbol_rank):
            c, e = self.images[k]
            shown = sym.HALF_DISPLAY.get(k, k) + ("^(1/2)" if k in sym.HALF_DISPLAY else "")
            parts.append(f"{shown}={poly_to_text(LaurentPolynomial.monomial(e, c))}")
        return ",".join(parts)


def substitute(x, spec: SpecializationSpec):
    """Image of a polynomial or rational function under ``spec``."""
    if isinstance(x, LaurentPolynomial):
        try:
            return x.substitute_terms(spec.images)
        except ZeroDivisionError as exc:
            raise IllFormedSpec(str(exc)) from None
    if isinstance(x, RationalFunction):
        try:
            return x.substitute_terms(spec.images)
        except DivisionByZero:
            raise
        except ZeroDivisionError as exc:
            raise IllFormedSpec(str(exc)) from None
    if isinstance(x, (int, Fraction)):
        return x
    raise TypeError(f"cannot substitute into {type(x).__name__}")


def rename(x, mapping: Mapping[str, str]):
    """Relabel symbols; a swap such as ``{qh: th, th: qh}`` is allowed."""
    return x.rename(mapping)


def parse_spec(text: str) -> SpecializationSpec:
    """Parse ``q=1/2,t=1/3,s=5`` style assignments.

    ``q``, ``t`` and ``a1..a4`` name the squared generators, so their values
    must be perfect rational squares (``q=1/4`` gives ``qh=1/2``); the raw
    square-root names ``qh``, ``th``, ``ah1..ah4`` take any value.
    """
    images = {}
    if not text.strip():
        raise IllFormedSpec("empty specialization")
    for item in text.split(","):
        if "=" not in item:
            raise IllFormedSpec(f"expected name=value, got {item!r}")
        name, value = (part.strip() for part in item.split("=", 1))
        try:
            v = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise IllFormedSpec(f"value for {name} is not an exact rational: {value!r}") from None
        if name in sym.DISPLAY_TO_HALF:
            root = rational_sqrt(v)
            if root is None:
                raise IllFormedSpec(f"{name}={value} is not the square of a rational")
            images[sym.DISPLAY_TO_HALF[name]] = root
        else:
            try:
                sym.symbol_rank(name)
            except sym.SymbolError as exc:
                raise IllFormedSpec(str(exc)) from None
            images[name] = v
    return SpecializationSpec(images)


def rational_sqrt(v: Fraction):
    if v < 0:
        return None
    a, b = math.isqrt(v.numerator), math.isqrt(v.denominator)
    if a * a == v.numerator and b * b == v.denominator:
        return Fraction(a, b)
    return None


# -- genericity ----------------------------------------------------------------

def _coprime_base(values):
    """Pairwise coprime integers > 1 such that every input is a product of
    their powers (factor refinement, no factorization needed)."""
    base = [v for v in values if v > 1]
    changed = True
    while changed:
        changed = False
        base = sorted(set(base))
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                g = math.gcd(base[i], base[j])
                if g > 1:
                    a, b = base[i], base[j]
                    new = [x for k, x in enumerate(base) if k not in (i, j)]
                    new += [x for x in (g, a // g, b // g) if x > 1]
                    base = new
                    changed = True
                    break
            if changed:
                break
    return sorted(set(base))


def _valuation(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _log_vector(x: Fraction, base):
    """Exponent vector of |x| over ``base`` and the sign bit of x."""
    vec = []
    num, den = abs(x.numerator), x.denominator
    for p in base:
        a, num = _valuation(num, p)
        b, den = _valuation(den, p)
        vec.append(a - b)
    assert num == 1 and den == 1
    return vec, 1 if x < 0 else 0


def check_generic(q0, t0, s0, alpha0=None, bound: int = 64) -> bool:
    """True iff ``q0^i t0^j s0^k != 1`` for all ``0 <= i,j,k <= bound`` not all
    zero, and ``|q0|, |t0| != 1``.  Exact; runs in O(bound^2).

    ``alpha0`` (optional values of the a-type generators) only has to be
    nonzero.
    """
    vals = [Fraction(q0), Fraction(t0), Fraction(s0)]
    if any(v == 0 for v in vals):
        raise ValueError("genericity is only defined for nonzero values")
    if alpha0 is not None and any(Fraction(a) == 0 for a in alpha0):
        return False
    if abs(vals[0]) == 1 or abs(vals[1]) == 1:
        return False
    ints = []
    for v in vals:
        ints += [abs(v.numerator), v.denominator]
    base = _coprime_base(ints)
    (vq, sq), (vt, st), (vs, ss) = (_log_vector(v, base) for v in vals)
    nz = [c for c, x in enumerate(vs) if x]
    for i in range(bound + 1):
        for j in range(bound + 1):
            w = [-(i * a + j * b) for a, b in zip(vq, vt)]
            if not nz:
                if any(w):
                    continue
                ks = [k for k in range(bound + 1) if (i * sq + j * st + k * ss) % 2 == 0]
                if any(k or i or j for k in ks):
                    return False
                continue
            c = nz[0]
            if w[c] % vs[c]:
                continue
            k = w[c] // vs[c]
            if not 0 <= k <= bound or (i == j == k == 0):
                continue
            if all(k * x == y for x, y in zip(vs, w)) and (i * sq + j * st + k * ss) % 2 == 0:
                return False
    return True


def check_generic_bruteforce(q0, t0, s0, bound: int) -> bool:
    """Direct enumeration; only for small bounds (test oracle)."""
    q0, t0, s0 = Fraction(q0), Fraction(t0), Fraction(s0)
    if abs(q0) == 1 or abs(t0) == 1:
        return False
    for i in range(bound + 1):
        for j in range(bound + 1):
            for k in range(bound + 1):
                if (i, j, k) != (0, 0, 0) and q0 ** i * t0 ** j * s0 ** k == 1:
                    return False
    return True

"""Sparse Laurent polynomials with exact rational coefficients.

A polynomial is a mapping from exponent tuples (one entry per symbol of its
alphabet) to nonzero coefficients.  Coefficients are stored as ``int`` when
integral and as :class:`fractions.Fraction` otherwise.  Values are treated as
immutable: every operation returns a new object.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .. import _kernels
from . import symbols as sym

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)
# pair-product count from which the int64 kernel pays for its array setup
KERNEL_MIN_PAIRS = 2048
_KERNEL_BOUND = 1 << 62


class ExponentOverflow(OverflowError):
    pass


class NotDivisible(ArithmeticError):
    pass


def norm_coef(c):
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _check_exp_range(lo, hi):
    if lo < INT64_MIN or hi > INT64_MAX:
        raise ExponentOverflow(f"exponent range [{lo}, {hi}] exceeds signed 64-bit")


def graded_key(exp):
    return (sum(exp), exp)


class LaurentPolynomial:
    __slots__ = ("alphabet", "terms", "_hash", "_box", "_intinfo")

    def __init__(self, terms: Mapping | None = None, alphabet: Iterable[str] = ()):
        alphabet = tuple(alphabet)
        if alphabet != sym.canonical(alphabet):
            raise sym.SymbolError(f"alphabet {alphabet} is not in canonical order")
        self.alphabet = alphabet
        self.terms = {} if terms is None else terms
        self._hash = None
        self._box = None
        self._intinfo = None

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, terms, alphabet):
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj.terms = terms
        obj._hash = None
        obj._box = None
        obj._intinfo = None
        return obj

    @classmethod
    def from_terms(cls, items, alphabet):
        """Build from ``(exponent tuple, coefficient)`` pairs, merging repeats."""
        alphabet = sym.canonical(alphabet)
        out: dict = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != len(alphabet):
                raise ValueError("exponent length does not match alphabet")
            out[exp] = out.get(exp, 0) + c
        return cls._raw({e: norm_coef(c) for e, c in out.items() if c != 0}, alphabet)

    @classmethod
    def constant(cls, c=1):
        c = norm_coef(c)
        return cls._raw({(): c} if c != 0 else {}, ())

    @classmethod
    def zero(cls):
        return cls._raw({}, ())

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | None = None, coef=1):
        exps = {k: v for k, v in (exps or {}).items() if v != 0}
        alphabet = sym.canonical(exps)
        coef = norm_coef(coef)
        if coef == 0:
            return cls._raw({}, alphabet)
        return cls._raw({tuple(exps[n] for n in alphabet): coef}, alphabet)

    @classmethod
    def symbol(cls, name: str, power: int = 1):
        return cls.monomial({name: power})

    # -- basic queries ------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self):
        return len(self.terms) == 1

    def symbols_used(self):
        used = set()
        for exp in self.terms:
            for name, e in zip(self.alphabet, exp):
                if e:
                    used.add(name)
        return sym.canonical(used)

    def trim(self):
        used = self.symbols_used()
        if used == self.alphabet:
            return self
        return self.lift(used, _allow_drop=True)

    def lift(self, alphabet, _allow_drop=False):
        alphabet = tuple(alphabet)
        if alphabet == self.alphabet:
            return self
        if _allow_drop:
            keep = [i for i, n in enumerate(self.alphabet) if n in alphabet]
            emb = sym.embedding(tuple(self.alphabet[i] for i in keep), alphabet)
            size = len(alphabet)
            out = {}
            for exp, c in self.terms.items():
                new = [0] * size
                for i, p in zip(keep, emb):
                    new[p] = exp[i]
                out[tuple(new)] = c
            return LaurentPolynomial._raw(out, alphabet)
        emb = sym.embedding(self.alphabet, alphabet)
        size = len(alphabet)
        out = {}
        for exp, c in self.terms.items():
            new = [0] * size
            for p, e in zip(emb, exp):
                new[p] = e
            out[tuple(new)] = c
        return LaurentPolynomial._raw(out, alphabet)

    def box(self):
        """Per-symbol (min, max) exponents as two tuples."""
        if self._box is None:
            if not self.terms:
                self._box = ((0,) * len(self.alphabet), (0,) * len(self.alphabet))
            else:
                cols = list(zip(*self.terms))
                if not cols:
                    self._box = ((), ())
                else:
                    self._box = (tuple(map(min, cols)), tuple(map(max, cols)))
        return self._box

    def _int_info(self):
        # (all coefficients integral, max |coefficient|)
        if self._intinfo is None:
            allint = all(type(c) is int for c in self.terms.values())
            mx = max((abs(c) for c in self.terms.values()), default=0)
            self._intinfo = (allint, mx)
        return self._intinfo

    # -- comparison ---------------------------------------------------
    def _canon_items(self):
        names = self.alphabet
        return frozenset(
            (tuple((n, e) for n, e in zip(names, exp) if e), c) for exp, c in self.terms.items()
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canon_items())
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            try:
                other = LaurentPolynomial.constant(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.alphabet == other.alphabet:
            return self.terms == other.terms
        if len(self.terms) != len(other.terms):
            return False
        alph = sym.merge(self.alphabet, other.alphabet)
        return self.lift(alph).terms == other.lift(alph).terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    # -- ring operations ----------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def _unify(self, other):
        if self.alphabet == other.alphabet:
            return self.alphabet, self.terms, other.terms
        alph = sym.merge(self.alphabet, other.alphabet)
        return alph, self.lift(alph).terms, other.lift(alph).terms

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        alph, a, b = self._unify(other)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = norm_coef(v) if type(v) is not int else v
        return LaurentPolynomial._raw(out, alph)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = norm_coef(c)
        if c == 0:
            return LaurentPolynomial._raw({}, self.alphabet)
        if c == 1:
            return self
        return LaurentPolynomial._raw(
            {e: norm_coef(v * c) for e, v in self.terms.items()}, self.alphabet
        )

    def shift(self, exps: Mapping[str, int]):
        """Multiply by the monomial with the given exponents."""
        return self * LaurentPolynomial.monomial(exps)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return LaurentPolynomial._raw({}, sym.merge(self.alphabet, other.alphabet))
        if other.is_constant():
            return self.scale(other.constant_value()).lift(sym.merge(self.alphabet, other.alphabet))
        if self.is_constant():
            return other.scale(self.constant_value()).lift(sym.merge(self.alphabet, other.alphabet))
        alph = sym.merge(self.alphabet, other.alphabet)
        a = self.lift(alph)
        b = other.lift(alph)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            for lo, hi, x in zip(*a.box(), eb):
                _check_exp_range(lo + x, hi + x)
            out = {tuple(x + y for x, y in zip(ea, eb)): norm_coef(ca * cb) for ea, ca in a.terms.items()}
            return LaurentPolynomial._raw(out, alph)
        return _mul_general(a, b, alph)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only exist for monomials")
            (e, c), = self.terms.items()
            for x in e:
                _check_exp_range(x * k, x * k)
            return LaurentPolynomial._raw({tuple(x * k for x in e): norm_coef(Fraction(c) ** k)}, self.alphabet)
        result = LaurentPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- ordering and inspection --------------------------------------
    def sorted_terms(self):
        """Terms in canonical graded-lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: graded_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: graded_key(t[0]))

    def _positions(self, names):
        idx = {n: i for i, n in enumerate(self.alphabet)}
        return [idx[n] for n in names if n in idx]

    def degree(self, names=None):
        """Maximal total degree in ``names`` (all symbols by default)."""
        if not self.terms:
            return None
        pos = range(len(self.alphabet)) if names is None else self._positions(names)
        return max(sum(e[i] for i in pos) for e in self.terms)

    def low_degree(self, names=None):
        if not self.terms:
            return None
        pos = range(len(self.alphabet)) if names is None else self._positions(names)
        return min(sum(e[i] for i in pos) for e in self.terms)

    def filter_terms(self, predicate):
        return LaurentPolynomial._raw(
            {e: c for e, c in self.terms.items() if predicate(e)}, self.alphabet
        )

    def homogeneous_part(self, names, degree):
        pos = self._positions(names)
        return self.filter_terms(lambda e: sum(e[i] for i in pos) == degree)

    def collect(self, names):
        """Split into ``{exponents in names: coefficient polynomial in the rest}``."""
        names = [n for n in names]
        pos = {n: i for i, n in enumerate(self.alphabet)}
        sel = [pos.get(n) for n in names]
        rest_names = tuple(n for n in self.alphabet if n not in set(names))
        rest_pos = [pos[n] for n in rest_names]
        groups: dict = {}
        for e, c in self.terms.items():
            key = tuple(0 if i is None else e[i] for i in sel)
            groups.setdefault(key, {})[tuple(e[i] for i in rest_pos)] = c
        return {k: LaurentPolynomial._raw(v, rest_names) for k, v in groups.items()}

    def coefficient(self, exps: Mapping[str, int]):
        """Coefficient of the monomial ``exps`` viewed in those symbols only."""
        names = list(exps)
        key = tuple(exps[n] for n in names)
        return self.collect(names).get(key, LaurentPolynomial._raw({}, ()))

    def max_abs_exponent(self):
        lo, hi = self.box()
        return max([abs(v) for v in lo + hi], default=0)

    def content_split(self):
        """Write ``self = c * m * g`` with g primitive, integral, not divisible by
        any monomial and with positive leading coefficient.

        Returns ``(c, m_exps, g)`` where ``m_exps`` is a dict of exponents.
        """
        if not self.terms:
            raise ZeroDivisionError("content of the zero polynomial")
        lo, _ = self.box()
        den = 1
        for c in self.terms.values():
            if type(c) is not int:
                den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, int(c * den))
        lead_e, lead_c = self.leading_term()
        content = Fraction(g, den)
        if lead_c < 0:
            content = -content
        sign = 1 if lead_c > 0 else -1
        out = {}
        for e, c in self.terms.items():
            out[tuple(x - m for x, m in zip(e, lo))] = sign * (int(c * den) // g)
        prim = LaurentPolynomial._raw(out, self.alphabet)
        mono = {n: m for n, m in zip(self.alphabet, lo) if m}
        return norm_coef(content), mono, prim

    # -- substitution -------------------------------------------------
    def substitute_terms(self, images: Mapping[str, tuple]):
        """Simultaneous substitution ``symbol -> coef * monomial``.

        ``images`` maps a symbol to ``(coef, {symbol: exponent})``.  A zero
        coefficient kills terms with positive exponent and is an error for
        negative ones.
        """
        mapped = [n for n in self.alphabet if n in images]
        if not mapped:
            return self
        img_syms = set()
        for n in mapped:
            img_syms.update(k for k, v in images[n][1].items() if v)
        kept = [n for n in self.alphabet if n not in images]
        alph = sym.canonical(set(kept) | img_syms)
        pos = {n: i for i, n in enumerate(alph)}
        src = {n: i for i, n in enumerate(self.alphabet)}
        kept_pairs = [(src[n], pos[n]) for n in kept]
        plan = []
        for n in mapped:
            coef, exps = images[n]
            vec = [(pos[k], v) for k, v in exps.items() if v]
            plan.append((src[n], norm_coef(coef), vec, {}))
        size = len(alph)
        out: dict = {}
        for e, c in self.terms.items():
            new = [0] * size
            for i, p in kept_pairs:
                new[p] = e[i]
            coef = c
            dead = False
            for i, ic, vec, cache in plan:
                k = e[i]
                if not k:
                    continue
                if ic == 0:
                    if k < 0:
                        raise ZeroDivisionError(f"negative power of {self.alphabet[i]} mapped to 0")
                    dead = True
                    break
                if ic != 1:
                    f = cache.get(k)
                    if f is None:
                        f = cache[k] = norm_coef(Fraction(ic) ** k)
                    coef = coef * f
                for p, v in vec:
                    new[p] += k * v
            if dead:
                continue
            key = tuple(new)
            v = out.get(key, 0) + coef
            if v == 0:
                out.pop(key, None)
            else:
                out[key] = v
        for key in out:
            out[key] = norm_coef(out[key])
        if out:
            cols = list(zip(*out))
            for col in cols:
                _check_exp_range(min(col), max(col))
        return LaurentPolynomial._raw(out, alph)

    def rename(self, mapping: Mapping[str, str]):
        """Relabel symbols (a permutation or injective renaming)."""
        images = {k: (1, {v: 1}) for k, v in mapping.items() if k in self.alphabet}
        return self.substitute_terms(images)

    # -- division -----------------------------------------------------
    def exact_div(self, other):
        """Quotient ``self / other``; raises :class:`NotDivisible` otherwise."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return self
        if len(other.terms) == 1:
            alph = sym.merge(self.alphabet, other.alphabet)
            a = self.lift(alph)
            (eb, cb), = other.lift(alph).terms.items()
            inv = Fraction(1) / cb
            return LaurentPolynomial._raw(
                {tuple(x - y for x, y in zip(e, eb)): norm_coef(c * inv) for e, c in a.terms.items()}, alph
            )
        alph = sym.merge(self.alphabet, other.alphabet)
        a = self.lift(alph)
        b = other.lift(alph)
        (alo, ahi), (blo, bhi) = a.box(), b.box()
        qlo = [x - y for x, y in zip(alo, blo)]
        qhi = [x - y for x, y in zip(ahi, bhi)]
        if any(l > h for l, h in zip(qlo, qhi)):
            raise NotDivisible("exponent ranges are incompatible")
        # Pack exponents relative to the boxes into integers (lexicographic
        # mixed radix).  Every intermediate term of the division lies in a's
        # box, so keys add without carries and compare lexicographically.
        k = len(alph)
        widths = [h - l + 1 for l, h in zip(alo, ahi)]
        qwidth = [h - l + 1 for l, h in zip(qlo, qhi)]
        strides = [1] * k
        for i in range(k - 2, -1, -1):
            strides[i] = strides[i + 1] * widths[i + 1]

        def pack(e, lo):
            key = 0
            for x, l, st in zip(e, lo, strides):
                key += (x - l) * st
            return key

        b_items = [(pack(e, blo), c) for e, c in b.terms.items()]
        lead_key, lead_c = max(b_items)
        lead_digits = []
        r = lead_key
        for st in strides:
            d, r = divmod(r, st)
            lead_digits.append(d)
        # stay in integers for the common unit leading coefficient
        lead_inv = lead_c if lead_c in (1, -1) and type(lead_c) is int else Fraction(1) / lead_c
        rem = {pack(e, alo): c for e, c in a.terms.items()}
        heap = [-key for key in rem]
        heapq.heapify(heap)
        quot = {}
        while rem:
            while True:
                key = -heapq.heappop(heap)
                if key in rem:
                    break
            c = rem.pop(key)
            qkey = key - lead_key
            # digit-wise difference (no borrows) must lie in the quotient box
            r = key
            for st, w, ld in zip(strides, qwidth, lead_digits):
                d, r = divmod(r, st)
                if not 0 <= d - ld < w:
                    raise NotDivisible("quotient term outside the admissible exponent box")
            qc = norm_coef(c * lead_inv)
            quot[qkey] = qc
            for bk, bc in b_items:
                if bk == lead_key:
                    continue
                te = qkey + bk
                v = rem.get(te)
                if v is None:
                    rem[te] = norm_coef(-qc * bc)
                    heapq.heappush(heap, -te)
                else:
                    v = v - qc * bc
                    if v == 0:
                        del rem[te]
                    else:
                        rem[te] = norm_coef(v)
        out = {}
        for qkey, c in quot.items():
            e = []
            r = qkey
            for st, l in zip(strides, qlo):
                d, r = divmod(r, st)
                e.append(d + l)
            out[tuple(e)] = c
        return LaurentPolynomial._raw(out, alph)

    def divides(self, other):
        """True when ``other / self`` is a Laurent polynomial."""
        try:
            other.exact_div(self)
        except NotDivisible:
            return False
        return True

    # -- display ------------------------------------------------------
    def __repr__(self):
        from .serialize import poly_to_text

        return f"LaurentPolynomial({poly_to_text(self)!r})"

    def __str__(self):
        from .serialize import poly_to_text

        return poly_to_text(self)


def _pack_layout(lo, hi):
    widths = [h - l + 1 for l, h in zip(lo, hi)]
    strides = []
    acc = 1
    for w in reversed(widths):
        strides.append(acc)
        acc *= w
    strides.reverse()
    return widths, strides, acc


def _pack(poly, lo, strides):
    exps = list(poly.terms)
    if not strides:
        return [0] * len(exps), list(poly.terms.values())
    keys = [sum((x - l) * s for x, l, s in zip(e, lo, strides)) for e in exps]
    return keys, list(poly.terms.values())


def _unpack(keys, lo, widths, strides):
    if not strides:
        return [()] * len(keys)
    arr = np.asarray(keys, dtype=np.int64) if not isinstance(keys, np.ndarray) else keys
    cols = [(arr // s) % w + l for l, w, s in zip(lo, widths, strides)]
    return list(map(tuple, np.stack(cols, axis=1).tolist()))


def _unpack_py(keys, lo, widths, strides):
    out = []
    for k in keys:
        e = []
        for l, w, s in zip(lo, widths, strides):
            q, k = divmod(k, s)
            e.append(q + l)
        out.append(tuple(e))
    return out


def _mul_general(a, b, alph):
    (alo, ahi), (blo, bhi) = a.box(), b.box()
    lo = [x + y for x, y in zip(alo, blo)]
    hi = [x + y for x, y in zip(ahi, bhi)]
    for l, h in zip(lo, hi):
        _check_exp_range(l, h)
    widths, strides, total = _pack_layout(lo, hi)
    # operand keys are offsets against their own minima so sums land in [0, total)
    ka, ca = _pack(a, alo, strides)
    kb, cb = _pack(b, blo, strides)
    a_int, a_max = a._int_info()
    b_int, b_max = b._int_info()
    pairs = len(ka) * len(kb)
    if (
        a_int
        and b_int
        and pairs >= KERNEL_MIN_PAIRS
        and total < _KERNEL_BOUND
        and a_max * b_max * min(len(ka), len(kb)) < _KERNEL_BOUND
    ):
        keys, coefs = _kernels.mul_terms(ka, ca, kb, cb, total)
        exps = _unpack(keys, lo, widths, strides)
        return LaurentPolynomial._raw(dict(zip(exps, coefs.tolist())), alph)
    acc: dict = {}
    get = acc.get
    for k1, c1 in zip(ka, ca):
        for k2, c2 in zip(kb, cb):
            k = k1 + k2
            acc[k] = get(k, 0) + c1 * c2
    items = [(k, c) for k, c in acc.items() if c != 0]
    if total < _KERNEL_BOUND:
        exps = _unpack([k for k, _ in items], lo, widths, strides) if items else []
    else:
        exps = _unpack_py([k for k, _ in items], lo, widths, strides)
    return LaurentPolynomial._raw({e: norm_coef(c) for e, (_, c) in zip(exps, items)}, alph)


def poly(x) -> LaurentPolynomial:
    """Coerce ints, Fractions and symbol names to polynomials."""
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, str):
        return LaurentPolynomial.symbol(x)
    return LaurentPolynomial.constant(x)


def prod(items) -> LaurentPolynomial:
    """Product of polynomials, multiplying smallest operands first."""
    items = [poly(i) for i in items]
    if not items:
        return LaurentPolynomial.constant(1)
    heap = [(len(p.terms), i, p) for i, p in enumerate(items)]
    heapq.heapify(heap)
    counter = len(items)
    while len(heap) > 1:
        _, _, p1 = heapq.heappop(heap)
        _, _, p2 = heapq.heappop(heap)
        r = p1 * p2
        heapq.heappush(heap, (len(r.terms), counter, r))
        counter += 1
    return heap[0][2]

"""Canonical text and JSON forms of polynomials and rational functions.

Text form: terms in descending graded-lex order joined by `` + `` / `` - ``;
a term is an optional coefficient followed by ``*``-joined powers.  The
square-root generators print under their squared names with half-integer
exponents (``qh^3`` prints as ``q^(3/2)``).  A fraction prints as
``(num)/(den)``.

JSON form::

    {"alphabet": [...], "num": {"terms": [{"exp": [...], "coef": "p/q"}]},
     "den": {"terms": [...]}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import symbols as sym
from .laurent import LaurentPolynomial, norm_coef


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- text output -----------------------------------------------------------

def _power_text(name, e):
    if name in sym.HALF_DISPLAY:
        shown = sym.HALF_DISPLAY[name]
        if e == 2:
            return shown
        exp = Fraction(e, 2)
    else:
        shown = name
        if e == 1:
            return shown
        exp = Fraction(e)
    if exp.denominator == 1 and exp > 0:
        return f"{shown}^{exp.numerator}"
    return f"{shown}^({exp})"


def _monomial_text(alphabet, exp):
    return "*".join(_power_text(n, e) for n, e in zip(alphabet, exp) if e)


def poly_to_text(p: LaurentPolynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, (exp, c) in enumerate(p.sorted_terms()):
        mono = _monomial_text(p.alphabet, exp)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def to_text(x) -> str:
    from .field import RationalFunction

    if isinstance(x, LaurentPolynomial):
        return poly_to_text(x)
    if not isinstance(x, RationalFunction):
        raise TypeError(f"cannot serialize {type(x).__name__}")
    if not x.den:
        return poly_to_text(x.num)
    return f"({poly_to_text(x.num)})/({poly_to_text(x.denominator)})"


# -- json output -------------------------------------------------------------

def _terms_json(p, alphabet):
    p = p.lift(alphabet)
    return {"terms": [{"exp": list(e), "coef": str(Fraction(c))} for e, c in p.sorted_terms()]}


def to_json_obj(x) -> dict:
    from .field import RationalFunction, rf

    x = rf(x)
    num = x.num.trim()
    den = x.denominator.trim() if x.den else LaurentPolynomial.constant(1)
    alphabet = sym.merge(num.alphabet, den.alphabet)
    return {"alphabet": list(alphabet), "num": _terms_json(num, alphabet), "den": _terms_json(den, alphabet)}


def to_json(x) -> str:
    return json.dumps(to_json_obj(x), separators=(",", ":"))


def from_json_obj(obj):
    from .field import RationalFunction

    try:
        alphabet = tuple(obj["alphabet"])
        if alphabet != sym.canonical(alphabet):
            raise ValueError("alphabet is not in canonical order")

        def read(part):
            items = []
            for t in part["terms"]:
                exp = [int(e) for e in t["exp"]]
                if len(exp) != len(alphabet):
                    raise ValueError("exponent length mismatch")
                items.append((tuple(exp), Fraction(t["coef"])))
            return LaurentPolynomial.from_terms(items, alphabet)

        num = read(obj["num"])
        den = read(obj["den"]) if "den" in obj else LaurentPolynomial.constant(1)
    except (KeyError, TypeError, ValueError, sym.SymbolError) as exc:
        raise ParseError(f"malformed polynomial JSON: {exc}", 0) from None
    return RationalFunction.from_pair(num, den, cancel=False)


def from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    return from_json_obj(obj)


# -- text parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1):
            tokens.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing (numerator, denominator) pairs."""

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty input", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        n, d = self.term()
        if sign < 0:
            n = -n
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            n2, d2 = self.term()
            if op == "-":
                n2 = -n2
            if d == d2:
                n = n + n2
            else:
                n, d = n * d2 + n2 * d, d * d2
        return n, d

    def term(self):
        n, d = self.power()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            n2, d2 = self.power()
            if op == "*":
                n, d = n * n2, d * d2
            else:
                if n2.is_zero():
                    raise ParseError("division by zero", pos)
                n, d = n * d2, d * n2
        return n, d

    def power(self):
        tok = self.peek()
        half_name = tok[1] if tok[0] == "name" and tok[1] in sym.DISPLAY_TO_HALF else None
        n, d = self.atom()
        if self.peek()[0] != "^":
            return n, d
        _, _, pos = self.take("^")
        exp = self.exponent()
        if half_name is not None:
            doubled = exp * 2
            if doubled.denominator != 1:
                raise ParseError("exponent must be a multiple of 1/2", pos)
            return LaurentPolynomial.symbol(sym.DISPLAY_TO_HALF[half_name], int(doubled)), _ONE()
        if exp.denominator != 1:
            raise ParseError("fractional exponent on a non-generator", pos)
        k = int(exp)
        if k < 0:
            if n.is_zero():
                raise ParseError("negative power of zero", pos)
            n, d, k = d, n, -k
        return n ** k, d ** k

    def exponent(self):
        tok = self.peek()
        if tok[0] == "num":
            return Fraction(self.take()[1])
        if tok[0] == "-":
            self.take()
            return -Fraction(self.take("num")[1])
        if tok[0] == "(":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            value = Fraction(self.take("num")[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator in exponent", den_tok[2])
                value /= den_tok[1]
            self.take(")")
            return sign * value
        raise ParseError(f"bad exponent {tok[1]!r}", tok[2])

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return LaurentPolynomial.constant(value), _ONE()
        if kind == "name":
            name = sym.DISPLAY_TO_HALF.get(value)
            if name is not None:
                return LaurentPolynomial.symbol(name, 2), _ONE()
            try:
                sym.symbol_rank(value)
            except sym.SymbolError:
                raise ParseError(f"invalid symbol {value!r}", pos) from None
            return LaurentPolynomial.symbol(value), _ONE()
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "-":
            n, d = self.power()
            return -n, d
        raise ParseError(f"unexpected token {value!r}", pos)


def _ONE():
    return LaurentPolynomial.constant(1)


def parse(text):
    """Parse canonical (or any well-formed) text into a rational function."""
    from .field import RationalFunction

    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n, d = _Parser(text).parse()
    if d.is_zero():
        raise ParseError("zero denominator", 0)
    return RationalFunction.from_pair(n, d, cancel=False)


def parse_poly(text) -> LaurentPolynomial:
    return parse(text).as_polynomial()


def serialize(x, fmt="text") -> bytes:
    if fmt == "text":
        return to_text(x).encode("utf-8")
    if fmt == "json":
        return to_json(x).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def deserialize(data, fmt="text"):
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if fmt == "text":
        return parse(data)
    if fmt == "json":
        return from_json(data)
    raise ValueError(f"unknown format {fmt!r}")

"""Certificate that the one-variable P*_m admit no q-difference equation
sum_{-d<=i<=d} a_i(x) f_m(q^i x) = E(m) f_m(x) with rational a_i of
bounded degree and a_d or a_-d nonzero."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith.field import RationalFunction, rf
from .arith.laurent import LaurentPolynomial, prod
from .arith.serialize import to_json_obj, to_text
from .interp import norm_H

ONE = LaurentPolynomial.constant(1)


class InsufficientProbes(ValueError):
    pass


def f_closed_form(m: int) -> LaurentPolynomial:
    """(x - 1)...(x - q^(m-1)) (1 - 1/(s^2 x))...(1 - 1/(s^2 q^(m-1) x))."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = LaurentPolynomial.symbol("x1")
    factors = []
    for j in range(m):
        factors.append(x - LaurentPolynomial.monomial({"qh": 2 * j}))
        factors.append(ONE - LaurentPolynomial.monomial({"s": -2, "qh": -2 * j, "x1": -1}))
    return prod(factors)


def _at(f: LaurentPolynomial, point: dict) -> RationalFunction:
    return rf(f.substitute_terms({"x1": (1, point)}))


def plus_point(m: int, d: int, shift: int = 0) -> dict:
    """q^(m-d+shift)."""
    return {"qh": 2 * (m - d + shift)}


def minus_point(m: int, d: int, shift: int = 0) -> dict:
    """q^shift / (s^2 q^(m-d))."""
    return {"s": -2, "qh": -2 * (m - d - shift)}


def vanishing_pattern(f: LaurentPolynomial, m: int, d: int):
    """At x = q^(m-d) every term but a_d f_m(q^d x) dies (including E(m) f_m(x));
    at x = 1/(s^2 q^(m-d)) every term but a_-d f_m(q^-d x) dies.  Returns the
    two surviving values, or None if the pattern fails."""
    for i in range(-d, d):
        if not _at(f, plus_point(m, d, i)).is_zero():
            return None
    for i in range(-d + 1, d + 1):
        if not _at(f, minus_point(m, d, i)).is_zero():
            return None
    return _at(f, plus_point(m, d, d)), _at(f, minus_point(m, d, -d))


def _mono_text(exps: dict) -> str:
    return to_text(LaurentPolynomial.monomial(exps))


@dataclass
class RefutationCertificate:
    d: int
    deg_bound: int
    probes: list
    r_plus: list
    r_minus: list
    witnesses: dict
    distinct: bool
    pattern_ok: bool
    witnesses_match_H: bool
    valid: bool
    pole_budget: int = 0
    notes: list = field(default_factory=list)

    def to_json_obj(self):
        return {
            "d": self.d,
            "deg_bound": self.deg_bound,
            "probes": self.probes,
            "r_plus": [_mono_text(e) for e in self.r_plus],
            "r_minus": [_mono_text(e) for e in self.r_minus],
            "witnesses": {str(m): to_json_obj(w) for m, w in sorted(self.witnesses.items())},
            "distinct": self.distinct,
            "vanishing_pattern": self.pattern_ok,
            "witnesses_match_H": self.witnesses_match_H,
            "pole_budget": self.pole_budget,
            "valid": self.valid,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=1)

    def sketch(self) -> str:
        lines = [
            f"order d = {self.d}, numerator degree span <= {self.deg_bound}",
            f"probes m = {self.probes[0]}..{self.probes[-1]} ({len(self.probes)} points)",
            "a_d vanishes at " + ", ".join(_mono_text(e) for e in self.r_plus),
            "a_-d vanishes at " + ", ".join(_mono_text(e) for e in self.r_minus),
            f"witnesses f_m(q^m) = H((m),1) nonzero: {self.witnesses_match_H}",
            f"{len(self.probes)} distinct roots > degree span {self.deg_bound}: a_d = a_-d = 0",
            f"probes that may be discarded as poles: {self.pole_budget}",
            "certificate " + ("VALID" if self.valid else "INVALID"),
        ]
        return "\n".join(lines)


def refute(d: int, deg_bound: int, probe_count: int | None = None) -> RefutationCertificate:
    if d < 1:
        raise ValueError("the order d must be at least 1")
    if deg_bound < 1:
        raise ValueError("the degree bound must be at least 1")
    if probe_count is None:
        probe_count = deg_bound + 1
    if probe_count <= deg_bound:
        raise InsufficientProbes(f"{probe_count} probes cannot exceed degree span {deg_bound}")
    probes = list(range(2 * d, 2 * d + probe_count))
    r_plus = [plus_point(m, d) for m in probes]
    r_minus = [minus_point(m, d) for m in probes]
    keys_p = {tuple(sorted(e.items())) for e in r_plus}
    keys_m = {tuple(sorted(e.items())) for e in r_minus}
    distinct = len(keys_p) == len(keys_m) == probe_count and not keys_p & keys_m
    witnesses, pattern_ok, match = {}, True, True
    for m in probes:
        f = f_closed_form(m)
        out = vanishing_pattern(f, m, d)
        if out is None:
            pattern_ok = False
            continue
        w_plus, w_minus = out
        witnesses[m] = w_plus
        if w_plus.is_zero() or w_minus.is_zero() or w_plus != norm_H((m,), 1) or w_minus != w_plus:
            match = False
    valid = distinct and pattern_ok and match and probe_count > deg_bound
    return RefutationCertificate(
        d, deg_bound, probes, r_plus, r_minus, witnesses, distinct, pattern_ok, match, valid,
        pole_budget=probe_count - deg_bound - 1,
    )


def recheck(cert: RefutationCertificate) -> bool:
    """Independently re-verify each witness and the cardinality inequality."""
    if len(cert.probes) <= cert.deg_bound:
        return False
    for m in cert.probes:
        w = cert.witnesses.get(m)
        if w is None or w.is_zero():
            return False
        direct = _at(f_closed_form(m), {"qh": 2 * m})
        if direct != w:
            return False
    return cert.distinct and cert.pattern_ok

"""Dual parameters, the binomial expansion of normalized Koornwinder
polynomials in interpolation polynomials, and an n = 1 check against
Askey-Wilson polynomials built from their q-difference operator."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .arith.field import RationalFunction, rf
from .arith.laurent import LaurentPolynomial, prod
from .arith.serialize import from_json_obj, to_json_obj
from .arith.specialize import SpecializationSpec, check_generic, substitute
from .combinatorics import Partition, partitions_upto
from .interp import newton_expand, norm_H, pstar, value_at

AH = ("ah1", "ah2", "ah3", "ah4")
BASE_EXPS = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2))
# the half-log involution (times 2)
_M = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))


class MissingEvaluation(KeyError):
    pass


class DegenerateEigenvalue(ArithmeticError):
    pass


class NotSelfDual(ValueError):
    pass


@dataclass(frozen=True)
class KoornwinderParams:
    """a_i = prod_j alpha_j^exps[i][j]; alpha_j is the symbol ah_j, or the
    number ``alphas[j]`` when given.  ``spec`` optionally fixes qh, th."""

    n: int
    exps: tuple = BASE_EXPS
    alphas: tuple | None = None
    spec: SpecializationSpec | None = None

    def _mono(self, exps, **extra) -> LaurentPolynomial:
        m = LaurentPolynomial.monomial({**dict(zip(AH, exps)), **extra})
        return self.apply(m)

    def apply(self, x):
        if self.alphas is not None:
            x = substitute(x, SpecializationSpec({a: Fraction(v) for a, v in zip(AH, self.alphas)}))
        if self.spec is not None:
            x = substitute(x, self.spec)
        return x

    def a(self, i: int) -> LaurentPolynomial:
        return self._mono(self.exps[i - 1])

    def image(self, i: int, **extra):
        """a_i (times extra symbol powers) as a substitution image."""
        return _image_of(self._mono(self.exps[i - 1], **extra))

    def koornwinder_abcd(self):
        """(a, b, c, d) = (a1, -a2, q^(1/2) a3, -q^(1/2) a4)."""
        return (
            self.a(1),
            -self.a(2),
            self._mono(self.exps[2], qh=1),
            -self._mono(self.exps[3], qh=1),
        )

    def rho(self, dual: bool):
        """q^rho (dual=True, built on a'_1) or q^rho' (built on a_1)."""
        p = dual_params(self) if dual else self
        return [p._mono(p.exps[0], th=2 * (self.n - i)) for i in range(1, self.n + 1)]


def _image_of(m: LaurentPolynomial):
    if m.is_zero() or len(m.terms) != 1:
        raise ValueError("expected a nonzero monomial")
    (e, c), = m.terms.items()
    return (c, {k: v for k, v in zip(m.alphabet, e) if v})


def dual_params(p: KoornwinderParams) -> KoornwinderParams:
    """Apply the half-log involution to the exponent vectors."""
    rows = []
    for r in _M:
        vec = [0, 0, 0, 0]
        for coef, ex in zip(r, p.exps):
            for j in range(4):
                vec[j] += coef * ex[j]
        if any(v % 2 for v in vec):
            raise ValueError("dual parameters need square roots beyond the generators")
        rows.append(tuple(v // 2 for v in vec))
    return KoornwinderParams(p.n, tuple(rows), p.alphas, p.spec)


# -- evaluation tables ------------------------------------------------------------

@dataclass
class EvaluationTable:
    """e_lam standing for P_lam(q^rho')."""

    entries: dict = field(default_factory=dict)

    def __getitem__(self, lam):
        lam = Partition(lam)
        if not lam:
            return self.entries.get(lam, RationalFunction.const(1))
        if lam not in self.entries:
            raise MissingEvaluation(f"no evaluation for {lam}")
        return self.entries[lam]

    def __setitem__(self, lam, value):
        value = rf(value)
        if value.is_zero():
            raise ValueError("evaluations must be nonzero")
        self.entries[Partition(lam)] = value

    @classmethod
    def symbolic(cls, max_weight: int, n: int):
        """Independent symbols e_<parts> for every partition."""
        t = cls()
        for lam in partitions_upto(max_weight, n):
            if lam:
                t[lam] = RationalFunction.symbol("e_" + "_".join(map(str, lam)))
        return t

    def to_json(self) -> str:
        obj = {lam.key(): to_json_obj(v) for lam, v in sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())}
        return json.dumps(obj, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str):
        t = cls()
        for key, v in json.loads(text).items():
            t[Partition.parse(key)] = from_json_obj(v)
        return t


# -- the binomial expansion -----------------------------------------------------------

def binomial_rhs(lam, p: KoornwinderParams, e: EvaluationTable) -> RationalFunction:
    """sum over mu in lam of t^((n-1)|mu|) a1^|mu| P*_mu(q^lam; a'_1)
    P*_mu(x; a_1) / (P*_mu(q^mu; a'_1) e_mu)."""
    lam = Partition(lam)
    n = p.n
    dual = dual_params(p)
    s_dual = {"s": dual.image(1)}
    s_here = {"s": p.image(1)}
    a1 = p.a(1)
    items = []
    for mu in partitions_upto(lam.weight, n):
        if not lam.contains(mu):
            continue
        ev = e[mu]
        at_lam = p.apply(value_at(mu, lam, n).substitute_terms(s_dual))
        if at_lam.is_zero():
            continue
        h = p.apply(norm_H(mu, n).substitute_terms(s_dual))
        P = p.apply(pstar(mu, n).substitute_terms(s_here))
        scale = p.apply(LaurentPolynomial.monomial({"th": 2 * (n - 1) * mu.weight})) * a1 ** mu.weight
        items.append(at_lam * P * rf(scale) / (h * ev))
    return RationalFunction.sum(items)


# -- Askey-Wilson polynomials (n = 1) ---------------------------------------------------

def _aw_coefficient(p: KoornwinderParams, var: str, inverse: bool):
    """A(z) = prod (1 - a z) / ((1 - z^2)(1 - q z^2)), or A(1/z)."""
    sign = -1 if inverse else 1
    z = LaurentPolynomial.symbol(var, sign)
    one = LaurentPolynomial.constant(1)
    q = p.apply(LaurentPolynomial.monomial({"qh": 2}))
    num = prod(one - c * z for c in p.koornwinder_abcd())
    return RationalFunction.from_factored(num, [(one - z * z, 1), (one - q * z * z, 1)])


def aw_operator(f, p: KoornwinderParams, var: str = "x1") -> LaurentPolynomial:
    """A(z)(f(qz) - f(z)) + A(1/z)(f(z/q) - f(z))."""
    f = rf(f)
    qimg = _image_of(p.apply(LaurentPolynomial.monomial({"qh": 2, var: 1})))
    qinv = _image_of(p.apply(LaurentPolynomial.monomial({"qh": -2, var: 1})))
    up = f.substitute_terms({var: qimg}) - f
    down = f.substitute_terms({var: qinv}) - f
    out = _aw_coefficient(p, var, False) * up + _aw_coefficient(p, var, True) * down
    return out.as_polynomial()


def _sym_basis(j: int, var: str) -> LaurentPolynomial:
    if j == 0:
        return LaurentPolynomial.constant(1)
    return LaurentPolynomial.symbol(var, j) + LaurentPolynomial.symbol(var, -j)


@dataclass
class AskeyWilson:
    poly: RationalFunction
    eigenvalues: list
    e: RationalFunction


def askey_wilson(m: int, p: KoornwinderParams, var: str = "x1") -> AskeyWilson:
    """Monic symmetric eigenfunction of degree m, by a triangular solve in
    the basis z^j + z^-j; e is its value at z = a_1."""
    if p.n != 1:
        raise ValueError("the Askey-Wilson oracle is the n = 1 case")
    cols = []
    for j in range(m + 1):
        img = aw_operator(_sym_basis(j, var), p, var)
        parts = img.collect([var])
        col = []
        for i in range(m + 1):
            c = parts.get((i,))
            col.append(rf(c) if c is not None else RationalFunction.const(0))
        cols.append(col)
    # cols[j][i] = coefficient of basis i in L(basis j); upper triangular
    eig = [cols[j][j] for j in range(m + 1)]
    lam = eig[m]
    c = [None] * (m + 1)
    c[m] = RationalFunction.const(1)
    for i in range(m - 1, -1, -1):
        gap = eig[i] - lam
        if gap.is_zero():
            raise DegenerateEigenvalue(f"eigenvalues {i} and {m} coincide")
        acc = RationalFunction.sum(cols[j][i] * c[j] for j in range(i + 1, m + 1))
        c[i] = -acc / gap
    poly = RationalFunction.sum(c[j] * rf(_sym_basis(j, var)) for j in range(m + 1))
    e = poly.substitute_terms({var: p.image(1)})
    return AskeyWilson(poly, eig, e)


# -- n = 1 verification --------------------------------------------------------------------

_SAMPLE = [Fraction(a, b) for a in range(1, 8) for b in range(2, 9) if a != b]


def sample_params(rng: random.Random, self_dual: bool = False, bound: int = 64) -> KoornwinderParams:
    """Random rational parameters at n = 1 passing the genericity test for
    both a_1 and a'_1."""
    while True:
        qh = rng.choice(_SAMPLE)
        th = rng.choice(_SAMPLE)
        alphas = [rng.choice(_SAMPLE) * rng.choice((1, -1)) for _ in range(4)]
        if self_dual:
            alphas[0] = alphas[1] * alphas[2] * alphas[3]
        a1 = alphas[0] ** 2
        a1d = alphas[0] * alphas[1] * alphas[2] * alphas[3]
        if not check_generic(qh ** 2, th ** 2, a1, alphas, bound):
            continue
        if not check_generic(qh ** 2, th ** 2, a1d, alphas, bound):
            continue
        spec = SpecializationSpec.of(qh=qh, th=th)
        return KoornwinderParams(1, BASE_EXPS, tuple(alphas), spec)


def evaluation_table_n1(p: KoornwinderParams, m_max: int):
    """Askey-Wilson polynomials and their values e_(m) at z = a_1."""
    polys, table = {}, EvaluationTable()
    for m in range(m_max + 1):
        aw = askey_wilson(m, p)
        polys[m] = aw.poly
        if m:
            table[(m,)] = aw.e
    return polys, table


def verify_binomial_n1(m_max: int, points: int = 5, seed: int = 0) -> bool:
    """P_m(x a_1)/e_(m) equals the binomial sum at random parameters."""
    rng = random.Random(seed)
    for _ in range(points):
        p = sample_params(rng)
        polys, table = evaluation_table_n1(p, m_max)
        scaled = p.image(1, x1=1)
        for m in range(m_max + 1):
            lhs = polys[m].substitute_terms({"x1": scaled}) / table[(m,)]
            if lhs != binomial_rhs((m,), p, table):
                return False
    return True


def binomial_coefficients_n1(m: int, p: KoornwinderParams, table, degree: int | None = None) -> dict:
    """b_(j)(q^(m)), j <= degree: coefficients of P_m(x a_1)/e_(m) in the
    P*_(j)(x; a_1), found by Newton interpolation at the points q^(j)."""
    degree = m if degree is None else degree
    f = askey_wilson(m, p).poly.substitute_terms({"x1": p.image(1, x1=1)}) / table[(m,)]
    s_here = {"s": p.image(1)}
    out = {}
    for j in range(degree + 1):
        lam = Partition((j,) if j else ())
        point = _image_of(p.apply(LaurentPolynomial.monomial({"qh": 2 * j})))
        val = f.substitute_terms({"x1": point})
        for mu, c in out.items():
            val = val - c * p.apply(value_at(mu, lam, 1).substitute_terms(s_here))
        out[lam] = val / p.apply(norm_H(lam, 1).substitute_terms(s_here))
    return out


def verify_b_vanishing_n1(m_max: int = 4, seed: int = 0) -> bool:
    """b_(j)(q^(m)) = 0 for m < j <= m_max, and for j <= m it equals
    a1^j P*_(j)(q^(m); a'_1) / (H((j); a'_1) e_(j))."""
    rng = random.Random(seed)
    p = sample_params(rng)
    _, table = evaluation_table_n1(p, m_max)
    s_dual = {"s": dual_params(p).image(1)}
    a1 = p.a(1)
    for m in range(m_max + 1):
        coeffs = binomial_coefficients_n1(m, p, table, m_max)
        for mu, c in coeffs.items():
            j = mu.weight
            if j > m:
                if not c.is_zero():
                    return False
                continue
            at = p.apply(value_at(mu, Partition((m,)), 1).substitute_terms(s_dual))
            h = p.apply(norm_H(mu, 1).substitute_terms(s_dual))
            if c != rf(a1 ** j) * at / (h * table[mu]):
                return False
    return True


def verify_duality_n1(m: int, nu1: int, p: KoornwinderParams | None = None, seed: int = 0) -> bool:
    """P_m(q^nu1 a_1)/P_m(a_1) = P_nu1(q^m a'_1)/P_nu1(a'_1) when a'_1 = a_1."""
    if p is None:
        p = sample_params(random.Random(seed), self_dual=True)
    if p.a(1) != dual_params(p).a(1):
        raise NotSelfDual("a'_1 differs from a_1")
    P_m = askey_wilson(m, p)
    P_nu = askey_wilson(nu1, p)
    at = lambda k: {"x1": _image_of(p.apply(LaurentPolynomial.monomial({"qh": 2 * k})) * p.a(1))}
    lhs = P_m.poly.substitute_terms(at(nu1)) / P_m.e
    rhs = P_nu.poly.substitute_terms(at(m)) / P_nu.e
    return lhs == rhs


def binomial_at_ones(lam, p: KoornwinderParams, e: EvaluationTable) -> bool:
    """At x = (1, ..., 1) only the empty partition contributes."""
    f = binomial_rhs(lam, p, e)
    return f.substitute_terms({f"x{i}": (1, {}) for i in range(1, p.n + 1)}) == RationalFunction.const(1)


def binomial_top_term(lam, p: KoornwinderParams, e: EvaluationTable) -> bool:
    """Top-degree part of e_lam * rhs is t^((n-1)|lam|) a1^|lam| P_lam(x_i t^(1-i))."""
    from .macdonald import macdonald_p

    lam = Partition(lam)
    n = p.n
    f = binomial_rhs(lam, p, e) * e[lam]
    names = [f"x{i}" for i in range(1, n + 1)]
    top = RationalFunction._raw(f.num.homogeneous_part(names, lam.weight), dict(f.den))._cancel()
    images = {f"x{i}": (1, {f"x{i}": 1, "th": 2 * (1 - i)}) for i in range(1, n + 1)}
    target = p.apply(macdonald_p(lam, n).substitute_terms(images))
    scale = p.apply(LaurentPolynomial.monomial({"th": 2 * (n - 1) * lam.weight})) * p.a(1) ** lam.weight
    return top == target * rf(scale)

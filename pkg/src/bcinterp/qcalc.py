"""q-integrals and the integral representation at t = q^(2k+1).

At odd integer theta = 2k+1 every infinite Pochhammer ratio in the beta
measure telescopes, so the measure, the products V, Pi, D and the constant C
are all finite and the identity can be checked as an exact Laurent identity
in x.  Coefficients live either in Q(q^(1/2), s) or, after a numeric
specialization of (q^(1/2), s), in Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .arith import symbols as sym
from .arith.field import RationalFunction, rf
from .arith.laurent import LaurentPolynomial, prod
from .arith.pochhammer import telescope
from .arith.specialize import SpecializationSpec, substitute
from .combinatorics import Partition, minus_one, partitions_upto
from .interp import InterpolationPolynomial, PreconditionError, _check_length, pstar

ONE = LaurentPolynomial.constant(1)


class ConstantTermInMeasure(ValueError):
    pass


class MuNNonzero(PreconditionError):
    pass


# -- one-variable q-integral ---------------------------------------------------

@dataclass(frozen=True)
class QIntegralBounds:
    """Lower and upper limits as ``(coef, {symbol: exponent})`` monomials."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        for c, _ in (self.lower, self.upper):
            if c == 0:
                raise ValueError("integration bounds must be nonzero monomials")

    @staticmethod
    def of(lower, upper):
        return QIntegralBounds(_as_image(lower), _as_image(upper))


def _as_image(m):
    if isinstance(m, tuple):
        return (Fraction(m[0]), dict(m[1]))
    if isinstance(m, (int, Fraction)):
        return (Fraction(m), {})
    p = rf(m).as_polynomial()
    if len(p.terms) != 1:
        raise ValueError("bounds must be monomials")
    (e, c), = p.terms.items()
    return (Fraction(c), {k: v for k, v in zip(p.alphabet, e) if v})


def _power_of(image, l):
    c, e = image
    return LaurentPolynomial.monomial({k: v * l for k, v in e.items()}, Fraction(c) ** l)


def q_number_inverse(l: int, q=None) -> RationalFunction:
    """1/[l]_q = (1 - q)/(1 - q^l) for l != 0."""
    if q is not None:
        q = Fraction(q)
        return rf((1 - q) / (1 - q ** l))
    qm = LaurentPolynomial.monomial({"qh": 2})
    return RationalFunction.from_factored(ONE - qm, [(ONE - qm ** l, 1)])


def q_integral(f, var: str, bounds: QIntegralBounds, q=None) -> RationalFunction:
    """Integral of f(z) d_q z / z from v to u, termwise
    z^l -> (u^l - v^l)/[l]_q.  ``q`` may be a number when the coefficients
    are already specialized."""
    f = rf(f)
    if any(var in g.symbols_used() for g in f.den):
        raise ValueError("denominator depends on the integration variable")
    parts = f.num.collect([var])
    if parts.get((0,)) is not None and not parts[(0,)].is_zero():
        raise ConstantTermInMeasure(f"coefficient of {var}^0 is nonzero")
    items = []
    for (l,), c in parts.items():
        diff = _power_of(bounds.upper, l) - _power_of(bounds.lower, l)
        items.append(rf(c * diff) * q_number_inverse(l, q))
    total = RationalFunction.sum(items)
    return RationalFunction._raw(total.num, dict(f.den))._cancel() if f.den else total


def iterated_q_integral(f, limits, q=None) -> RationalFunction:
    """Integrate in the order given by ``limits = [(var, bounds), ...]``."""
    out = rf(f)
    for var, bounds in limits:
        out = q_integral(out, var, bounds, q)
    return out


# -- finite products at t = q^(2k+1) ------------------------------------------------

@dataclass(frozen=True)
class Context:
    """t = q^theta with theta = 2k+1; optional numeric values for qh and s."""

    k: int
    spec: SpecializationSpec | None = None

    @property
    def theta(self):
        return 2 * self.k + 1

    def mono(self, coef=1, **exps) -> LaurentPolynomial:
        m = LaurentPolynomial.monomial(exps, coef)
        return m if self.spec is None else substitute(m, self.spec)

    def q(self):
        """q as a number when specialized, else None."""
        if self.spec is None:
            return None
        return Fraction(self.spec.images["qh"][0]) ** 2

    def apply(self, x):
        x = substitute(x, SpecializationSpec.theta_spec(self.k))
        return x if self.spec is None else substitute(x, self.spec)

    def shifted(self, s_factor: dict):
        """Context whose s is s * (monomial in qh); numeric specs only."""
        if self.spec is None:
            raise ValueError("symbolic contexts shift s by substitution")
        images = dict(self.spec.images)
        c, e = images["s"]
        qh = self.spec.images["qh"][0]
        images["s"] = (c * Fraction(qh) ** s_factor.get("qh", 0), {})
        return Context(self.k, SpecializationSpec(images))


def x_star(ctx: Context, i: int, n: int, sign: int = 1) -> LaurentPolynomial:
    return ctx.mono(**{f"x{i}": sign, "qh": sign * 2 * ctx.theta * (n - i), "s": sign})


def y_star(ctx: Context, j: int, n: int, sign: int = 1) -> LaurentPolynomial:
    return ctx.mono(**{f"y{j}": sign, "qh": sign * ctx.theta * (2 * (n - j) - 1), "s": sign})


def _vdet(vals_pos, vals_neg, m):
    """det[(v_i^(m-j+1) - v_i^-(m-j+1))]_{i,j<=m} by permutation expansion."""
    total = LaurentPolynomial.zero()
    for perm in permutations(range(m)):
        sign = 1
        for a in range(m):
            for b in range(a + 1, m):
                if perm[a] > perm[b]:
                    sign = -sign
        term = LaurentPolynomial.constant(sign)
        for i, j in enumerate(perm):
            e = m - j
            term = term * (vals_pos[i] ** e - vals_neg[i] ** e)
        total = total + term
    return total


def weyl_V(ctx: Context, n: int, on: str = "x") -> LaurentPolynomial:
    """V of the starred x (n of them) or of the starred y (n-1 of them)."""
    if on == "x":
        pos = [x_star(ctx, i, n) for i in range(1, n + 1)]
        neg = [x_star(ctx, i, n, -1) for i in range(1, n + 1)]
        return _vdet(pos, neg, n)
    pos = [y_star(ctx, j, n) for j in range(1, n)]
    neg = [y_star(ctx, j, n, -1) for j in range(1, n)]
    return _vdet(pos, neg, n - 1)


def pi_factors(ctx: Context, n: int, j: int):
    """Factors (1 - q^(l+1/2) x*_i^+- y*_j^+-), l < k, over all i."""
    out = []
    for i in range(1, n + 1):
        for sx in (1, -1):
            for sy in (1, -1):
                m = x_star(ctx, i, n, sx) * y_star(ctx, j, n, sy)
                for l in range(ctx.k):
                    out.append(ONE - m * ctx.mono(qh=2 * l + 1))
    return out


def weyl_Pi(ctx: Context, n: int) -> LaurentPolynomial:
    return prod(f for j in range(1, n) for f in pi_factors(ctx, n, j))


def weyl_D(ctx: Context, n: int) -> LaurentPolynomial:
    factors = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            factors.append(
                x_star(ctx, i, n) + x_star(ctx, i, n, -1) - x_star(ctx, j, n) - x_star(ctx, j, n, -1)
            )
            for si in (1, -1):
                for sj in (1, -1):
                    m = x_star(ctx, i, n, si) * x_star(ctx, j, n, sj)
                    for l in range(1, 2 * ctx.k + 1):
                        factors.append(ONE - m * ctx.mono(qh=2 * l))
    return prod(factors)


@dataclass(frozen=True)
class WeylProducts:
    V: LaurentPolynomial
    Pi: LaurentPolynomial
    D: LaurentPolynomial
    k: int


def weyl_products(n: int, k: int, which: str | None = None, spec=None):
    ctx = Context(k, spec)
    if which == "V":
        return weyl_V(ctx, n)
    if which == "Pi":
        return weyl_Pi(ctx, n)
    if which == "D":
        return weyl_D(ctx, n)
    if which is not None:
        raise ValueError(f"unknown product {which!r}")
    return WeylProducts(weyl_V(ctx, n, "y"), weyl_Pi(ctx, n), weyl_D(ctx, n), k)


# -- the constant ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def c_const(mu, n: int, k: int) -> RationalFunction:
    """Product of q-beta values at t = q^(2k+1), in finite form."""
    mu = _check_length(mu, n)
    theta = 2 * k + 1
    q = LaurentPolynomial.monomial({"qh": 2})
    num = [LaurentPolynomial.monomial({"qh": n * (n - 1) // 2}), (ONE - q) ** (n - 1)]
    den = []
    for i in range(1, n):
        for j in range(1, theta):
            num.append(ONE - q ** j)
        for j in range(theta):
            den.append((ONE - q ** (mu.part(i) + (n - i) * theta + j), 1))
    return RationalFunction.from_factored(prod(num), den)


def c_const_telescoped(mu, n: int, k: int) -> RationalFunction:
    """The same constant from the infinite-product form (telescoped)."""
    mu = _check_length(mu, n)
    theta = 2 * k + 1
    terms = []
    for i in range(1, n):
        terms.append((1, {"qh": 2}, 1))
        terms.append((1, {"qh": 2 * theta}, -1))
        terms.append((1, {"qh": 2 * (mu.part(i) + (n - i + 1) * theta)}, 1))
        terms.append((1, {"qh": 2 * (mu.part(i) + (n - i) * theta)}, -1))
    q = LaurentPolynomial.monomial({"qh": 2})
    pre = LaurentPolynomial.monomial({"qh": n * (n - 1) // 2}) * (ONE - q) ** (n - 1)
    return rf(pre) * telescope(terms) if terms else rf(pre)


# -- the integral representation --------------------------------------------------------

def default_limits(ctx: Context, n: int, shifts=None):
    """Bounds x_(j+1) .. q x_j for y_j; ``shifts[j] = (s', r)`` moves them to
    q^(-s') x_(j+1) .. q^(r+1) x_j."""
    out = []
    for j in range(1, n):
        sp, r = (0, 0) if not shifts or j not in shifts else shifts[j]
        lo = ctx.mono(**{f"x{j + 1}": 1, "qh": -2 * sp})
        hi = ctx.mono(**{f"x{j}": 1, "qh": 2 * (r + 1)})
        out.append((f"y{j}", QIntegralBounds.of(lo, hi)))
    return out


def _inner_pstar(mu, n, ctx: Context, route: str):
    """P*_mu(y_1..y_(n-1); q, t, s t^(1/2)) at t = q^theta."""
    if route == "integral":
        if ctx.spec is None:
            inner = pstar_integral(mu, n - 1, ctx.k).value
            inner = inner.substitute_terms({"s": (1, {"s": 1, "qh": ctx.theta})})
        else:
            inner = pstar_integral(mu, n - 1, ctx.k, ctx.shifted({"qh": ctx.theta}).spec).value
    else:
        inner = pstar(mu, n - 1, route)
        inner = inner.substitute_terms({"s": (1, {"s": 1, "th": 1})})
        inner = ctx.apply(inner)
    return inner.rename({f"x{j}": f"y{j}" for j in range(1, n)})


def integral_rhs(mu, n: int, k: int, spec=None, shifts=None, route: str = "comb") -> RationalFunction:
    """The q-integral of V(y*) Pi(x*, y*) P*_mu(y; s t^(1/2)) over y < x.

    The bounds of each y_j involve x only, so the integral factorizes into
    one-variable moments of Pi's y_j-factors; the y_j^0 terms are assigned
    zero after checking that their total coefficient vanishes.
    """
    mu = _check_length(mu, n)
    if len(mu) == n:
        raise MuNNonzero("the integral representation needs mu_n = 0")
    ctx = Context(k, spec)
    W = rf(weyl_V(ctx, n, "y")) * _inner_pstar(mu, n, ctx, route)
    if n == 1:
        return W
    limits = dict(default_limits(ctx, n, shifts))
    ynames = [f"y{j}" for j in range(1, n)]
    wden = dict(W.den)
    wparts = W.num.collect(ynames)
    G = [prod(pi_factors(ctx, n, j)).collect([f"y{j}"]) for j in range(1, n)]
    # vanishing of the total y_j^0 coefficient
    for j in range(n - 1):
        acc = LaurentPolynomial.zero()
        for a, c in wparts.items():
            g = G[j].get((-a[j],))
            if g is not None:
                rest = {ynames[i]: a[i] for i in range(n - 1) if i != j}
                acc = acc + c * g * LaurentPolynomial.monomial(rest)
        if not acc.is_zero():
            raise ConstantTermInMeasure(f"integrand has a nonzero {ynames[j]}^0 coefficient")
    q = ctx.q()
    moments: list = [dict() for _ in range(n - 1)]

    def moment(j, a):
        cache = moments[j]
        if a not in cache:
            bounds = limits[ynames[j]]
            items = []
            for (c,), g in G[j].items():
                l = a + c
                if l == 0:
                    continue
                diff = _power_of(bounds.upper, l) - _power_of(bounds.lower, l)
                items.append(rf(g * diff) * q_number_inverse(l, q))
            cache[a] = RationalFunction.sum(items)
        return cache[a]

    total = _moment_sum(0, wparts, moment, n - 1)
    den = dict(total.den)
    for f, e in wden.items():
        den[f] = den.get(f, 0) + e
    return RationalFunction._raw(total.num, den)._cancel()


def _moment_sum(j, parts, moment, m):
    """sum_a c_a prod_(i >= j) M_i(a_i), grouping on one index at a time."""
    if j == m:
        return RationalFunction.sum(rf(c) for c in parts.values())
    groups: dict = {}
    for a, c in parts.items():
        groups.setdefault(a[j], {})[a] = c
    items = []
    for aj in sorted(groups):
        items.append(moment(j, aj) * _moment_sum(j + 1, groups[aj], moment, m))
    return RationalFunction.sum(items)


def integral_lhs(mu, n: int, k: int, spec=None, route: str = "comb") -> RationalFunction:
    """C(mu, n) t^|mu| D(x*) P*_mu(x) at t = q^(2k+1)."""
    mu = _check_length(mu, n)
    ctx = Context(k, spec)
    P = ctx.apply(pstar(mu, n, route))
    C = ctx.apply(c_const(mu, n, k))
    return C * rf(weyl_D(ctx, n)) * P * ctx.mono(qh=2 * ctx.theta * mu.weight)


def integral_rep_verify(mu, n: int, k: int, spec=None, route: str = "comb") -> bool:
    """Cross-multiplied integral representation as an exact identity in x."""
    mu = _check_length(mu, n)
    if len(mu) == n:
        raise MuNNonzero("the integral representation needs mu_n = 0")
    rhs = integral_rhs(mu, n, k, spec, route=route)
    lhs = integral_lhs(mu, n, k, spec, route)
    return lhs == rhs


def bound_shift_verify(mu, n: int, k: int, spec=None) -> bool:
    """The integral is unchanged when the limits of every y_j move to
    q^(-s') x_(j+1) .. q^(r+1) x_j with r, s' in 1..2k."""
    base = integral_rhs(mu, n, k, spec)
    for sp in range(1, 2 * k + 1):
        for r in range(1, 2 * k + 1):
            shifts = {j: (sp, r) for j in range(1, n)}
            if integral_rhs(mu, n, k, spec, shifts) != base:
                return False
    return True


def full_integrand(mu, n: int, k: int, spec=None) -> RationalFunction:
    ctx = Context(k, spec)
    W = rf(weyl_V(ctx, n, "y")) * _inner_pstar(mu, n, ctx, "comb")
    return W * rf(weyl_Pi(ctx, n))


# -- the integral route ------------------------------------------------------------------

def _pstar_integral_value(mu, n, k, spec):
    ctx = Context(k, spec)
    if not mu:
        return RationalFunction.const(1)
    if len(mu) == n:
        # peel one column with the q-shift identity
        low = minus_one(mu, n)
        inner = _integral_cached(low, n, k, _key(spec))
        images = {f"x{i}": (1, {f"x{i}": 1, "qh": -2}) for i in range(1, n + 1)}
        if spec is None:
            images["s"] = (1, {"s": 1, "qh": 2})
            inner = inner.substitute_terms(images)
        else:
            inner = _integral_cached(low, n, k, _key(ctx.shifted({"qh": 2}).spec))
            q = ctx.q()
            inner = inner.substitute_terms({f"x{i}": (1 / q, {f"x{i}": 1}) for i in range(1, n + 1)})
        factors = [ctx.mono(qh=2 * (mu.weight - n))]
        for i in range(1, n + 1):
            x = LaurentPolynomial.symbol(f"x{i}")
            factors.append(x * ctx.mono(qh=2 * ctx.theta * (1 - i)) - ctx.mono(qh=2 * ctx.theta * (1 - n)))
            factors.append(ONE - ctx.mono(**{f"x{i}": -1, "qh": -2 * ctx.theta * (n - i), "s": -2}))
        return inner * rf(prod(factors))
    I = integral_rhs(mu, n, k, spec, route="integral")
    D = weyl_D(ctx, n)
    C = ctx.apply(c_const(mu, n, k))
    quotient = RationalFunction._raw(I.num.exact_div(D), dict(I.den))
    return quotient / (C * ctx.mono(qh=2 * ctx.theta * mu.weight))


def _key(spec):
    if spec is None:
        return None
    return tuple(sorted((k, c) for k, (c, e) in spec.images.items()))


@lru_cache(maxsize=None)
def _integral_cached(mu, n, k, key):
    spec = None if key is None else SpecializationSpec(dict(key))
    return _pstar_integral_value(Partition(mu), n, k, spec)


def pstar_integral(mu, n: int, k: int, spec=None) -> InterpolationPolynomial:
    """P*_mu at t = q^(2k+1) from the integral representation (mu_n = 0)
    and the q-shift identity (mu_n > 0), recursively in n."""
    mu = _check_length(mu, n)
    if spec is not None:
        bad = set(spec.images) - {"qh", "s"}
        if bad or any(e for _, e in spec.images.values()):
            raise ValueError("the integral route specializes only qh and s to numbers")
    value = _integral_cached(mu, n, k, _key(spec))
    return InterpolationPolynomial(mu, n, value, "integral", spec)

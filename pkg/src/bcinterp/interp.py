"""Interpolation polynomials P*_mu(x; q, t, s) of BC type.

Three constructions live here (linear solve, tableau sum, branching
recursion); the integral construction is in :mod:`bcinterp.qcalc`.  All of
them return an :class:`InterpolationPolynomial` whose value is a
:class:`RationalFunction` with x only in the numerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .arith import symbols as sym
from .arith.field import RationalFunction, _normal_factors, rf
from .arith.laurent import LaurentPolynomial, NotDivisible, prod
from .arith.linalg import SingularSystem, bareiss_solve, fraction_solve
from .arith.specialize import SpecializationSpec, substitute
from .combinatorics import (
    EMPTY,
    LengthExceeded,
    Partition,
    interlaces,
    interlacing_below,
    minus_one,
    partitions_upto,
    plus_one,
    reverse_tableaux,
    square_stats,
    tail_from,
)
from .macdonald import macdonald_p, pieri_weight_a, psi_skew, psi_tableau

ROUTES = ("solve", "comb", "branch", "integral")

ZERO = RationalFunction.const(0)
ONE = RationalFunction.const(1)


class ZeroCoordinate(ValueError):
    pass


class NotInAlgebra(ValueError):
    pass


class DegreeExceeded(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def mono(coef=1, **exps) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(exps, coef)


def qts(a=0, b=0, s=0, **extra) -> LaurentPolynomial:
    """The monomial q^a t^b s^s (integer powers of q and t)."""
    return LaurentPolynomial.monomial({"qh": 2 * a, "th": 2 * b, "s": s, **extra})


def xvar(i: int) -> LaurentPolynomial:
    return LaurentPolynomial.symbol(f"x{i}")


def _check_length(mu, n):
    mu = Partition(mu)
    if len(mu) > n:
        raise LengthExceeded(f"{mu} has more than {n} parts")
    return mu


# -- starred variables --------------------------------------------------

@dataclass(frozen=True)
class StarVariables:
    """x*_i = x_i t^(n-i) s as monomial substitutions."""

    n: int

    def star(self, i: int):
        return (1, {f"x{i}": 1, "th": 2 * (self.n - i), "s": 1})

    def unstar(self, i: int):
        return (1, {f"x{i}": 1, "th": -2 * (self.n - i), "s": -1})

    def at_point(self, lam):
        """Values of x*_i at x = q^lam, as (coef, exps) images."""
        lam = Partition(lam).padded(self.n)
        return [(1, {"qh": 2 * lam[i - 1], "th": 2 * (self.n - i), "s": 1}) for i in range(1, self.n + 1)]

    def generators(self):
        """Substitutions generating the signed permutations of the x*_i:
        adjacent swaps and inversion of the last starred variable."""
        n = self.n
        out = []
        for i in range(1, n):
            out.append({
                f"x{i}": (1, {f"x{i + 1}": 1, "th": -2}),
                f"x{i + 1}": (1, {f"x{i}": 1, "th": 2}),
            })
        if n:
            out.append({f"x{n}": (1, {f"x{n}": -1, "s": -2})})
        return out

    def inversion(self, i: int):
        """x*_i -> 1/x*_i, i.e. x_i -> 1/(x_i t^(2(n-i)) s^2)."""
        return {f"x{i}": (1, {f"x{i}": -1, "th": -4 * (self.n - i), "s": -2})}


def in_algebra(f, n: int) -> bool:
    """Invariance under permutations and inversions of the starred variables."""
    f = rf(f)
    return all(f.substitute_terms(g) == f for g in StarVariables(n).generators())


def point_images(lam, n: int):
    lam = Partition(lam).padded(n)
    return {f"x{i}": (1, {"qh": 2 * lam[i - 1]}) for i in range(1, n + 1)}


def x_degree(f, n: int) -> int:
    """Largest sum of absolute x-exponents (the filtration degree)."""
    f = rf(f)
    keys = f.num.collect(sym.xs(n))
    return max((sum(abs(e) for e in k) for k in keys), default=0)


# -- the normalization constant -------------------------------------------

def norm_H_factors(mu, n: int):
    """(monomial prefactor, list of binomial factors) of H(mu, n)."""
    mu = _check_length(mu, n)
    w = mu.weight
    conj = mu.conjugate()
    pre = qts(-(2 * conj.n_stat() + w), mu.n_stat() - 2 * (n - 1) * w, -2 * w)
    one = LaurentPolynomial.constant(1)
    factors = []
    for i, j in mu.squares():
        st = square_stats(mu, n, i, j)
        factors.append(qts(st.a + 1, st.l) - one)
        factors.append(qts(st.a_mirror, st.l_mirror, 2) - one)
    return pre, factors


@lru_cache(maxsize=None)
def norm_H(mu, n: int) -> RationalFunction:
    """P*_mu(q^mu), a Laurent polynomial in q, t, s."""
    pre, factors = norm_H_factors(mu, n)
    return rf(prod([pre] + factors))


@lru_cache(maxsize=None)
def inverse_H(mu, n: int) -> RationalFunction:
    """1/H(mu, n) with the binomial factors kept apart."""
    pre, factors = norm_H_factors(mu, n)
    return RationalFunction.from_factored(pre ** -1, [(f, 1) for f in factors])


# -- InterpolationPolynomial ------------------------------------------------

@dataclass(frozen=True, eq=False)
class InterpolationPolynomial:
    mu: Partition
    n: int
    value: RationalFunction
    route: str
    spec: SpecializationSpec | None = None

    def __eq__(self, other):
        if isinstance(other, InterpolationPolynomial):
            return self.value == other.value
        return self.value == other

    __hash__ = None

    def specialize(self, spec: SpecializationSpec):
        return InterpolationPolynomial(self.mu, self.n, substitute(self.value, spec), self.route, spec)


# -- tableau sum ------------------------------------------------------------

def _square_factor(i, j, v, n, second=True):
    """t^(1-v) (x_v - q^a' t^-l') (1 - 1/(q^a' t^(2(n-v)-l') s^2 x_v))."""
    a, l = j - 1, i - 1
    x = xvar(v)
    first = qts(0, 1 - v) * (x - qts(a, -l))
    if not second:
        return first
    one = LaurentPolynomial.constant(1)
    return first * (one - qts(-a, -(2 * (n - v) - l), -2, **{f"x{v}": -1}))


def _tableau_sum(mu, n, second=True):
    items = []
    for T in reverse_tableaux(mu, n):
        poly = prod(_square_factor(i, j, v, n, second) for (i, j), v in T.entries)
        items.append(psi_tableau(T, n) * poly)
    return RationalFunction.sum(items)


@lru_cache(maxsize=None)
def _comb(mu, n):
    if not mu:
        return ONE
    return _tableau_sum(mu, n)


def pstar_comb(mu, n: int) -> InterpolationPolynomial:
    """Sum over reverse tableaux of psi_T times a product over squares."""
    mu = _check_length(mu, n)
    return InterpolationPolynomial(mu, n, _comb(mu, n), "comb")


@lru_cache(maxsize=None)
def pstar_two_param(mu, n: int) -> RationalFunction:
    """The tableau sum with every second factor dropped (the s-free
    interpolation polynomial of type A)."""
    mu = _check_length(mu, n)
    if not mu:
        return ONE
    return _tableau_sum(mu, n, second=False)


# -- branching ----------------------------------------------------------------

def branch_coeff(mu, nu, n: int, var: str = "u") -> RationalFunction:
    """Coefficient of P*_nu(x_2..x_n) in P*_mu(x_1..x_n), as a function of
    ``var`` standing for x_1."""
    mu, nu = Partition(mu), Partition(nu)
    if not interlaces(nu, mu):
        return ZERO
    u = LaurentPolynomial.symbol(var)
    one = LaurentPolynomial.constant(1)
    factors = [qts(0, -nu.weight)]
    for i, j in mu.skew_squares(nu):
        a, l = j - 1, i - 1
        factors.append(u - qts(a, -l))
        factors.append(one - qts(-a, -(2 * n - 2 - l), -2, **{var: -1}))
    return psi_skew(mu, nu) * prod(factors)


def _shift_x(f, n, by=1):
    """Rename x_j -> x_(j+by)."""
    return f.rename({f"x{j}": f"x{j + by}" for j in range(1, n + 1)})


@lru_cache(maxsize=None)
def _branch(mu, n):
    if n == 0:
        return ONE
    if not mu:
        return ONE
    items = []
    for nu in interlacing_below(mu, n - 1):
        c = branch_coeff(mu, nu, n, var="x1")
        inner = _shift_x(_branch(nu, n - 1), n - 1)
        items.append(c * inner)
    return RationalFunction.sum(items)


def pstar_branch(mu, n: int) -> InterpolationPolynomial:
    """Recursion on the number of variables through the branching rule."""
    mu = _check_length(mu, n)
    return InterpolationPolynomial(mu, n, _branch(mu, n), "branch")


# -- linear solve -------------------------------------------------------------

@lru_cache(maxsize=None)
def orbit(nu, n: int) -> tuple:
    """Distinct signed permutations of nu padded to length n."""
    base = Partition(nu).padded(n)
    out = set()
    for perm in set(permutations(base)):
        nz = [i for i, v in enumerate(perm) if v]
        for signs in product((1, -1), repeat=len(nz)):
            e = list(perm)
            for i, sg in zip(nz, signs):
                e[i] *= sg
            out.add(tuple(e))
    return tuple(sorted(out))


def orbit_sum_star(nu, n: int) -> LaurentPolynomial:
    """m_nu(x*) as a Laurent polynomial in x, t, s."""
    sv = StarVariables(n)
    terms = []
    for e in orbit(nu, n):
        exps: dict = {}
        for i, k in enumerate(e, 1):
            if k:
                _, img = sv.star(i)
                for name, v in img.items():
                    exps[name] = exps.get(name, 0) + k * v
        terms.append(LaurentPolynomial.monomial(exps))
    total = LaurentPolynomial.zero()
    for t in terms:
        total = total + t
    return total


def orbit_sum_at(nu, lam, n: int) -> LaurentPolynomial:
    """m_nu(x*) at x = q^lam."""
    return orbit_sum_star(nu, n).substitute_terms(point_images(lam, n))


def _candidate_factors(max_q, max_t):
    """Normal factors of q^a t^b - 1 and s^2 q^a t^b - 1 in a box."""
    one = LaurentPolynomial.constant(1)
    out = {}
    for a in range(0, max_q + 1):
        for b in range(-max_t, max_t + 1):
            for s2 in (0, 2):
                if a == 0 and b == 0 and s2 == 0:
                    continue
                _, fs = _normal_factors(qts(a, b, s2) - one)
                for f in fs:
                    out[f] = None
    return sorted(out, key=lambda f: (len(f.terms), str(f)))


def _split_denominator(det: LaurentPolynomial, max_q, max_t):
    """Trial-divide ``det`` by the candidate factors; returns the factor
    multiplicities and the undivided rest."""
    found: dict = {}
    rest = det
    for f in _candidate_factors(max_q, max_t):
        while True:
            try:
                rest = rest.exact_div(f)
            except NotDivisible:
                break
            found[f] = found.get(f, 0) + 1
    return found, rest


def _quotient(num: LaurentPolynomial, found: dict, rest: LaurentPolynomial) -> RationalFunction:
    """num / (rest * prod(found)) with the common factors cancelled."""
    den = dict(found)
    try:
        num = num.exact_div(rest)
    except NotDivisible:
        scale, fs = _normal_factors(rest)
        num = num.exact_div(scale)
        for f in fs:
            den[f] = den.get(f, 0) + 1
    return RationalFunction._raw(num, den)._cancel(force=True)


def _solve_system(mu, n, spec):
    grid = partitions_upto(mu.weight, n)
    idx = grid.index(mu)
    if spec is None:
        H = norm_H(mu, n).as_polynomial()
        A = [[orbit_sum_at(nu, lam, n) for nu in grid] for lam in grid]
        b = [LaurentPolynomial.zero()] * len(grid)
        b[idx] = LaurentPolynomial.constant(1)
        nums, det = bareiss_solve(A, b)
        found, rest = _split_denominator(det, mu.weight + 1, 2 * n + mu.weight)
        # reduce each coefficient (free of x) before expanding the orbit sums
        items = []
        for c, nu in zip(nums, grid):
            if not c.is_zero():
                items.append(_quotient(c * H, found, rest) * orbit_sum_star(nu, n))
        value = RationalFunction.sum(items)
        return value
    H = substitute(norm_H(mu, n), spec).constant_value()
    A = [[substitute(orbit_sum_at(nu, lam, n), spec).constant_value() for nu in grid] for lam in grid]
    b = [Fraction(0)] * len(grid)
    b[idx] = Fraction(H)
    coeffs = fraction_solve(A, b)
    total = LaurentPolynomial.zero()
    for c, nu in zip(coeffs, grid):
        if c:
            total = total + substitute(orbit_sum_star(nu, n), spec).scale(c)
    return rf(total)


@lru_cache(maxsize=None)
def _solve_cached(mu, n, spec_key):
    spec = None if spec_key is None else SpecializationSpec({k: (c, dict(e)) for k, (c, e) in spec_key})
    return _solve_system(mu, n, spec)


def _spec_key(spec):
    if spec is None:
        return None
    return tuple(sorted((k, (c, tuple(sorted(e.items())))) for k, (c, e) in spec.images.items()))


def pstar_solve(mu, n: int, spec: SpecializationSpec | None = None) -> InterpolationPolynomial:
    """Solve the interpolation conditions on the grid {q^lam : |lam| <= |mu|}
    in the basis of orbit sums of monomials in the starred variables.

    With ``spec`` (numeric values for qh, th, s) the system is solved over
    the rationals; otherwise it is solved fraction-free over Laurent
    polynomials in q^(1/2), t^(1/2), s.
    """
    mu = _check_length(mu, n)
    if not mu:
        return InterpolationPolynomial(mu, n, ONE, "solve", spec)
    value = _solve_cached(mu, n, _spec_key(spec))
    return InterpolationPolynomial(mu, n, value, "solve", spec)


# -- dispatch -------------------------------------------------------------------

def pstar(mu, n: int, route: str = "comb", k: int | None = None) -> RationalFunction:
    """P*_mu as a field element, built by ``route``."""
    if route == "comb":
        return pstar_comb(mu, n).value
    if route == "branch":
        return pstar_branch(mu, n).value
    if route == "solve":
        return pstar_solve(mu, n).value
    if route == "integral":
        from .qcalc import pstar_integral

        return pstar_integral(mu, n, 0 if k is None else k).value
    raise ValueError(f"unknown route {route!r}")


def build(mu, n: int, route: str = "comb", k: int | None = None) -> InterpolationPolynomial:
    if route == "comb":
        return pstar_comb(mu, n)
    if route == "branch":
        return pstar_branch(mu, n)
    if route == "solve":
        return pstar_solve(mu, n)
    if route == "integral":
        from .qcalc import pstar_integral

        return pstar_integral(mu, n, 0 if k is None else k)
    raise ValueError(f"unknown route {route!r}")


# -- evaluation -----------------------------------------------------------------

def eval_at(P, point) -> RationalFunction:
    """Evaluate at a point given as numbers, monomials or a partition
    (meaning q^lam)."""
    value = P.value if isinstance(P, InterpolationPolynomial) else rf(P)
    if isinstance(point, Partition):
        n = P.n if isinstance(P, InterpolationPolynomial) else len(point)
        return value.substitute_terms(point_images(point, n))
    images = {}
    for i, x in enumerate(point, 1):
        if isinstance(x, (int, Fraction)):
            if x == 0:
                raise ZeroCoordinate(f"coordinate {i} is zero")
            images[f"x{i}"] = (Fraction(x), {})
            continue
        x = rf(x)
        if x.is_zero():
            raise ZeroCoordinate(f"coordinate {i} is zero")
        p = x.as_polynomial()
        if len(p.terms) != 1:
            raise ValueError("point coordinates must be monomials or numbers")
        (e, c), = p.terms.items()
        images[f"x{i}"] = (c, {k: v for k, v in zip(p.alphabet, e) if v})
    return value.substitute_terms(images)


@lru_cache(maxsize=None)
def value_at(mu, lam, n: int) -> RationalFunction:
    """P*_mu(q^lam) from the tableau sum."""
    mu, lam = Partition(mu), Partition(lam)
    if mu == lam:
        return norm_H(mu, n)
    if not lam.contains(mu):
        return ZERO
    return _comb(mu, n).substitute_terms(point_images(lam, n))


# -- Newton expansion -------------------------------------------------------------

def newton_expand(f, n: int, d: int, check: bool = True) -> dict:
    """Coefficients f_mu with f = sum f_mu P*_mu, by the triangular solve
    over the values f(q^lam), |lam| <= d, checked at |lam| = d + 1."""
    f = rf(f)
    if check and not in_algebra(f, n):
        raise NotInAlgebra("not invariant under signed permutations of the starred variables")
    coeffs: dict = {}
    for lam in partitions_upto(d + 1, n):
        val = f.substitute_terms(point_images(lam, n))
        terms = [val]
        for nu, c in coeffs.items():
            if nu != lam and lam.contains(nu):
                terms.append(-(c * value_at(nu, lam, n)))
        resid = RationalFunction.sum(terms)
        if lam.weight > d:
            if not resid.is_zero():
                raise DegreeExceeded(f"nonzero residual at q^{lam}")
            continue
        if not resid.is_zero():
            coeffs[lam] = resid * inverse_H(lam, n)
    return dict(sorted(coeffs.items(), key=lambda kv: kv[0].sort_key()))


# -- structural checks ---------------------------------------------------------------

def s_parity_ok(f) -> bool:
    f = rf(f)
    polys = [f.num, *f.den]
    for p in polys:
        if "s" in p.alphabet:
            i = p.alphabet.index("s")
            if any(e[i] % 2 for e in p.terms):
                return False
    return True


def vanishing_check(mu, n: int, extra: int = 2, route: str = "comb", value=None) -> bool:
    """Zero at q^lam for lam not containing mu (|lam| <= |mu| + extra) and
    H(mu) at q^mu."""
    mu = _check_length(mu, n)
    P = pstar(mu, n, route) if value is None else value
    for lam in partitions_upto(mu.weight + extra, n):
        v = P.substitute_terms(point_images(lam, n))
        if lam == mu:
            if v != norm_H(mu, n):
                return False
        elif not lam.contains(mu) and not v.is_zero():
            return False
    return True


def tail_vanishing_check(mu, n: int, max_lam: int = 4, route: str = "comb") -> bool:
    """Substituting x_j = q^lam_j for j >= i gives zero whenever the tail
    (mu_i, mu_i+1, ...) is not contained in (lam_i, lam_i+1, ...)."""
    mu = _check_length(mu, n)
    P = pstar(mu, n, route)
    for lam in partitions_upto(max_lam, n):
        padded = lam.padded(n)
        for i in range(1, n + 1):
            if tail_from(lam, i).contains(tail_from(mu, i)):
                continue
            images = {f"x{j}": (1, {"qh": 2 * padded[j - 1]}) for j in range(i, n + 1)}
            if not P.substitute_terms(images).is_zero():
                return False
    return True


def degree_ok(mu, n: int, route: str = "comb") -> bool:
    mu = Partition(mu)
    return x_degree(pstar(mu, n, route), n) == mu.weight


# -- shift identities -----------------------------------------------------------------

def verify_shift_props(mu, n: int, which: str, route: str = "comb") -> bool:
    mu = _check_length(mu, n)
    if which == "q_shift":
        if len(mu) < n or n == 0:
            raise PreconditionError("the q-shift identity needs mu_n > 0")
        low = minus_one(mu, n)
        inner = pstar(low, n, route)
        images = {f"x{i}": (1, {f"x{i}": 1, "qh": -2}) for i in range(1, n + 1)}
        images["s"] = (1, {"s": 1, "qh": 2})
        inner = inner.substitute_terms(images)
        one = LaurentPolynomial.constant(1)
        factors = [qts(mu.weight - n)]
        for i in range(1, n + 1):
            x = xvar(i)
            factors.append(x * qts(0, 1 - i) - qts(0, 1 - n))
            factors.append(one - qts(0, -(n - i), -2, **{f"x{i}": -1}))
        rhs = inner * prod(factors)
        return pstar(mu, n, route) == rhs
    if which == "restriction":
        if len(mu) >= n:
            raise PreconditionError("the restriction identity needs mu_n = 0")
        lhs = pstar(mu, n, route).substitute_terms({f"x{n}": (1, {})})
        rhs = pstar(mu, n - 1, route).substitute_terms({"s": (1, {"s": 1, "th": 2})})
        return lhs == rhs
    if which == "inversion":
        P = pstar(mu, n, route)
        images = {f"x{i}": (1, {f"x{i}": -1}) for i in range(1, n + 1)}
        images.update({"qh": (1, {"qh": -1}), "th": (1, {"th": -1}), "s": (1, {"s": -1})})
        w = mu.weight
        return P.substitute_terms(images) == P * qts(0, (2 * n - 2) * w, 2 * w)
    raise ValueError(f"unknown identity {which!r}")


# -- Pieri rule ----------------------------------------------------------------------

def pieri_coeff(lam, mu, n: int, var: str = "u") -> RationalFunction:
    lam, mu = Partition(lam), Partition(mu)
    if len(lam) > n or len(mu) > n:
        return ZERO
    top = plus_one(mu, n)
    if not (lam.contains(mu) and top.contains(lam)):
        return ZERO
    u = LaurentPolynomial.symbol(var)
    one = LaurentPolynomial.constant(1)
    factors = []
    for i, j in top.skew_squares(lam):
        a, l = j - 1, i - 1
        factors.append(u + qts(a, -l))
        factors.append(one + qts(-a, -(2 * (n - 1) - l), -2, **{var: -1}))
    return pieri_weight_a(lam, mu, n) * prod(factors)


def pieri_lhs(mu, n: int, route: str = "comb") -> RationalFunction:
    u = LaurentPolynomial.symbol("u")
    one = LaurentPolynomial.constant(1)
    factors = []
    for i in range(1, n + 1):
        factors.append(u + xvar(i) * qts(0, 1 - i))
        factors.append(one + qts(0, -(2 * n - i - 1), -2, u=-1, **{f"x{i}": -1}))
    return pstar(mu, n, route) * prod(factors)


def verify_pieri(mu, n: int, route: str = "comb") -> bool:
    mu = _check_length(mu, n)
    coeffs = newton_expand(pieri_lhs(mu, n, route), n, mu.weight + n)
    window = set(partitions_upto(mu.weight + n, n))
    for lam in window:
        if coeffs.get(lam, ZERO) != pieri_coeff(lam, mu, n):
            return False
    return set(coeffs) <= window


def u_inversion(n: int, var: str = "u"):
    """u -> 1/(t^(2n-2) s^2 u)."""
    return {var: (1, {var: -1, "th": -2 * (2 * n - 2), "s": -2})}


# -- Cauchy identity -------------------------------------------------------------------

def swap_qt(f):
    return f.rename({"qh": "th", "th": "qh"})


def cauchy_sides(n: int, m: int, route: str = "comb", spec: SpecializationSpec | None = None):
    from .combinatorics import partitions_in_box, tilde

    one = LaurentPolynomial.constant(1)
    factors = []
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            y = LaurentPolynomial.symbol(f"y{j}")
            factors.append(xvar(i) * qts(0, n - i) - y * qts(m - j))
            factors.append(one - qts(-(m - j), -(n - i), -2, **{f"x{i}": -1, f"y{j}": -1}))
    lhs = rf(prod(factors))
    terms = []
    for mu in partitions_in_box(n, m):
        mt = tilde(mu, n, m)
        sign = -1 if mt.weight % 2 else 1
        left = pstar(mu, n, route)
        right = swap_qt(pstar(mt, m, route)).rename({f"x{j}": f"y{j}" for j in range(1, m + 1)})
        scale = qts((m - 1) * mt.weight, (n - 1) * mu.weight).scale(sign)
        if spec is not None:
            left, right, scale = substitute(left, spec), substitute(right, spec), substitute(scale, spec)
        terms.append(left * right * scale)
    if spec is not None:
        lhs = substitute(lhs, spec)
    return lhs, RationalFunction.sum(terms)


def verify_cauchy(n: int, m: int, route: str = "comb", spec: SpecializationSpec | None = None) -> bool:
    if n < 1 or m < 1:
        raise PreconditionError("n and m must be positive")
    lhs, rhs = cauchy_sides(n, m, route, spec)
    return lhs == rhs


# -- limits in s and the top-degree term --------------------------------------------------

def _s_slice(f: RationalFunction, power: int) -> RationalFunction:
    if any("s" in g.symbols_used() for g in f.den):
        raise ValueError("denominator depends on s")
    num = f.num
    if "s" not in num.alphabet:
        part = num if power == 0 else LaurentPolynomial.zero()
    else:
        i = num.alphabet.index("s")
        part = num.filter_terms(lambda e: e[i] == power).substitute_terms({"s": (1, {})})
    return RationalFunction._raw(part, dict(f.den))._cancel()


def limit_check(mu, n: int, direction: str, route: str = "comb") -> bool:
    """s_infinity: the s^0 part is the s-free tableau sum.  s_zero: the
    coefficient of s^(-2|mu|) is t^((2-2n)|mu|) times the s-free polynomial
    at (1/x; 1/q, 1/t)."""
    mu = _check_length(mu, n)
    P = pstar(mu, n, route)
    two = pstar_two_param(mu, n)
    if direction == "s_infinity":
        return _s_slice(P, 0) == two
    if direction == "s_zero":
        images = {f"x{i}": (1, {f"x{i}": -1}) for i in range(1, n + 1)}
        images.update({"qh": (1, {"qh": -1}), "th": (1, {"th": -1})})
        target = two.substitute_terms(images) * qts(0, (2 - 2 * n) * mu.weight)
        return _s_slice(P, -2 * mu.weight) == target
    raise ValueError(f"unknown direction {direction!r}")


def top_term_check(mu, n: int, route: str = "comb") -> bool:
    mu = _check_length(mu, n)
    P = pstar(mu, n, route)
    names = sym.xs(n)
    top = RationalFunction._raw(P.num.homogeneous_part(names, mu.weight), dict(P.den))._cancel()
    images = {f"x{i}": (1, {f"x{i}": 1, "th": 2 * (1 - i)}) for i in range(1, n + 1)}
    return top == macdonald_p(mu, n).substitute_terms(images)

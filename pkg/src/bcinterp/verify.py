"""Verification suites: each suite expands into named cases, every case is a
picklable (function, args) pair returning True/False, and results are merged
in case-id order so output does not depend on the worker count."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor, TimeoutError as FutureTimeout, as_completed
from dataclasses import dataclass
from fractions import Fraction

from .arith.specialize import SpecializationSpec, check_generic, substitute
from .combinatorics import Partition, interlaces, partitions_upto

SUITES = (
    "routes", "vanishing", "shifts", "topterm", "branching", "limits", "pieri",
    "cauchy", "dualcauchy", "integral", "binomial-n1", "duality-n1", "binomial-structure",
)

_SAMPLE = [Fraction(a, b) for a in range(1, 12) for b in range(2, 13) if a != b]


@dataclass(frozen=True)
class Case:
    suite: str
    cid: str
    func: str
    args: tuple


@dataclass(frozen=True)
class Result:
    case: Case
    status: str  # PASS, FAIL, ERROR, TIMEOUT
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self):
        return self.status == "PASS"


def random_specs(seed: int, count: int, names=("qh", "th", "s"), bound: int = 64, theta=None):
    """``count`` distinct generic numeric specializations of (qh, th, s);
    with ``theta`` the test uses t = q^theta."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        vals = {name: rng.choice(_SAMPLE) for name in names}
        key = tuple(sorted(vals.items()))
        if key in seen:
            continue
        qh, th, s = vals.get("qh", Fraction(1, 2)), vals.get("th", Fraction(1, 3)), vals.get("s", 5)
        t = qh ** (2 * theta) if theta is not None else th ** 2
        if not check_generic(qh ** 2, t, s, None, bound):
            continue
        seen.add(key)
        out.append(SpecializationSpec(vals))
    return out


def default_workers() -> int:
    env = os.environ.get("BCINTERP_WORKERS")
    if env:
        return max(1, int(env))
    return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1)


# -- case functions (module level so they pickle) -------------------------------------

def case_routes(mu, n, symbolic, seed, points=5):
    from .interp import pstar, pstar_solve

    comb, branch = pstar(mu, n, "comb"), pstar(mu, n, "branch")
    if symbolic:
        return comb == branch and branch == pstar_solve(mu, n).value
    for spec in random_specs(seed, points):
        solved = pstar_solve(mu, n, spec).value
        if substitute(comb, spec) != solved or substitute(branch, spec) != solved:
            return False
    return True


def case_vanishing(mu, n):
    from .interp import degree_ok, in_algebra, pstar, s_parity_ok, vanishing_check

    P = pstar(mu, n)
    return vanishing_check(mu, n, 2) and in_algebra(P, n) and degree_ok(mu, n) and s_parity_ok(P)


def case_closed_form(m):
    from .arith.field import rf
    from .interp import pstar_solve
    from .refute import f_closed_form

    return rf(f_closed_form(m)) == pstar_solve((m,), 1).value


def case_shift(mu, n, which):
    from .interp import verify_shift_props

    return verify_shift_props(mu, n, which)


def case_topterm(mu, n):
    from .interp import top_term_check

    return top_term_check(mu, n)


def case_branching(mu, n):
    from .interp import branch_coeff, tail_vanishing_check, u_inversion

    mu = Partition(mu)
    inv = u_inversion(n)
    for nu in partitions_upto(mu.weight, n - 1):
        c = branch_coeff(mu, nu, n)
        if interlaces(nu, mu):
            if c.is_zero() or c.substitute_terms(inv) != c:
                return False
        elif not c.is_zero():
            return False
    return tail_vanishing_check(mu, n, 4)


def case_limits(mu, n):
    from .interp import limit_check

    return limit_check(mu, n, "s_infinity") and limit_check(mu, n, "s_zero")


def case_pieri(mu, n):
    from .interp import verify_pieri

    return verify_pieri(mu, n)


def case_cauchy(n, m, seed, points):
    from .interp import verify_cauchy

    if points == 0:
        return verify_cauchy(n, m)
    return all(verify_cauchy(n, m, spec=spec) for spec in random_specs(seed, points))


def case_dualcauchy(n, m):
    from .macdonald import dual_cauchy_check

    return dual_cauchy_check(n, m)


def case_integral(mu, n, k, seed, points):
    from .qcalc import integral_rep_verify

    if points == 0:
        return integral_rep_verify(mu, n, k)
    specs = random_specs(seed, points, names=("qh", "s"), theta=2 * k + 1)
    return all(integral_rep_verify(mu, n, k, spec) for spec in specs)


def case_bound_shift(mu, n, k):
    from .qcalc import bound_shift_verify

    return bound_shift_verify(mu, n, k)


def case_binomial_point(m_max, seed):
    from .koornwinder import verify_binomial_n1

    return verify_binomial_n1(m_max, points=1, seed=seed)


def case_b_vanishing(m_max, seed):
    from .koornwinder import verify_b_vanishing_n1

    return verify_b_vanishing_n1(m_max, seed)


def case_duality(m, nu1, seed):
    from .koornwinder import verify_duality_n1

    return verify_duality_n1(m, nu1, seed=seed)


def case_binomial_structure(lam, n):
    from .koornwinder import EvaluationTable, KoornwinderParams, binomial_at_ones, binomial_top_term

    lam = Partition(lam)
    e = EvaluationTable.symbolic(lam.weight, n)
    p = KoornwinderParams(n)
    return binomial_at_ones(lam, p, e) and binomial_top_term(lam, p, e)


# -- suite expansion --------------------------------------------------------------------

@dataclass
class Grid:
    ns: tuple = (1, 2, 3)
    max_weight: int = 3
    ks: tuple = (0, 1)
    seed: int = 0
    points: int = 5
    m: int | None = None


def _mus(grid: Grid, n: int, min_weight: int = 0):
    return [mu for mu in partitions_upto(grid.max_weight, n) if mu.weight >= min_weight]


def expand(suite: str, grid: Grid):
    cases = []

    def add(cid, func, *args):
        cases.append(Case(suite, cid, func, args))

    if suite == "routes":
        for n in grid.ns:
            for mu in _mus(grid, n):
                symbolic = mu.weight <= 3 and n <= 2
                add(f"n={n} mu={mu.key()} {'symbolic' if symbolic else f'{grid.points} specs'}",
                    "case_routes", tuple(mu), n, symbolic, grid.seed, grid.points)
    elif suite == "vanishing":
        for n in grid.ns:
            for mu in _mus(grid, n):
                add(f"n={n} mu={mu.key()}", "case_vanishing", tuple(mu), n)
        if 1 in grid.ns:
            for m in range(max(grid.max_weight, 6) + 1):
                add(f"closed form m={m}", "case_closed_form", m)
    elif suite == "shifts":
        for n in grid.ns:
            for mu in _mus(grid, n):
                names = ["q_shift" if len(mu) == n else "restriction", "inversion"]
                for which in names:
                    add(f"n={n} mu={mu.key()} {which}", "case_shift", tuple(mu), n, which)
    elif suite == "topterm":
        for n in grid.ns:
            for mu in _mus(grid, n):
                add(f"n={n} mu={mu.key()}", "case_topterm", tuple(mu), n)
    elif suite == "branching":
        for n in grid.ns:
            for mu in _mus(grid, n):
                add(f"n={n} mu={mu.key()}", "case_branching", tuple(mu), n)
    elif suite == "limits":
        for n in grid.ns:
            for mu in _mus(grid, n):
                add(f"n={n} mu={mu.key()}", "case_limits", tuple(mu), n)
    elif suite == "pieri":
        for n in grid.ns:
            for mu in _mus(grid, n):
                add(f"n={n} mu={mu.key()}", "case_pieri", tuple(mu), n)
    elif suite in ("cauchy", "dualcauchy"):
        if grid.m is not None:
            pairs = [(n, grid.m) for n in grid.ns]
        else:
            pairs = [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)]
        for n, m in pairs:
            if suite == "dualcauchy":
                add(f"n={n} m={m}", "case_dualcauchy", n, m)
            elif n + m <= 4:
                add(f"n={n} m={m} symbolic", "case_cauchy", n, m, grid.seed, 0)
            else:
                add(f"n={n} m={m} {grid.points} specs", "case_cauchy", n, m, grid.seed, grid.points)
    elif suite == "integral":
        for n in grid.ns:
            if n < 2:
                continue
            for k in grid.ks:
                for mu in _mus(grid, n):
                    if len(mu) == n:
                        continue
                    if n >= 3 and k >= 1 and mu:
                        add(f"n={n} k={k} mu={mu.key()} {grid.points} specs", "case_integral",
                            tuple(mu), n, k, grid.seed, grid.points)
                    else:
                        add(f"n={n} k={k} mu={mu.key()} symbolic", "case_integral", tuple(mu), n, k, grid.seed, 0)
        if 2 in grid.ns and 1 in grid.ks:
            for mu in _mus(grid, 2):
                if len(mu) < 2 and mu.weight <= 2:
                    add(f"bound shift n=2 k=1 mu={mu.key()}", "case_bound_shift", tuple(mu), 2, 1)
    elif suite == "binomial-n1":
        m_max = max(grid.max_weight, 4)
        for i in range(grid.points):
            add(f"m<={m_max} point {i}", "case_binomial_point", m_max, grid.seed * 1000 + i)
        add(f"b vanishing m<={m_max}", "case_b_vanishing", m_max, grid.seed)
    elif suite == "duality-n1":
        top = min(grid.max_weight, 3)
        for m in range(top + 1):
            for nu1 in range(top + 1):
                add(f"m={m} nu1={nu1}", "case_duality", m, nu1, grid.seed)
    elif suite == "binomial-structure":
        for n in grid.ns:
            if n > 2:
                continue
            for lam in _mus(grid, n):
                add(f"n={n} lam={lam.key()}", "case_binomial_structure", tuple(lam), n)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return cases


# -- running ----------------------------------------------------------------------------

def run_case(case: Case) -> Result:
    fn = globals()[case.func]
    start = time.perf_counter()
    try:
        ok = bool(fn(*case.args))
    except Exception as exc:  # reported, never swallowed silently
        return Result(case, "ERROR", f"{type(exc).__name__}: {exc}", time.perf_counter() - start)
    return Result(case, "PASS" if ok else "FAIL", "", time.perf_counter() - start)


def run_cases(cases, workers: int = 1, timeout: float | None = None):
    """Run cases and return results in input order."""
    deadline = None if timeout is None else time.monotonic() + timeout
    results: dict = {}
    if workers <= 1 or len(cases) <= 1:
        for i, case in enumerate(cases):
            if deadline is not None and time.monotonic() > deadline:
                results[i] = Result(case, "TIMEOUT")
                continue
            results[i] = run_case(case)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        futures = {pool.submit(run_case, case): i for i, case in enumerate(cases)}
        try:
            remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
            for fut in as_completed(futures, timeout=remaining):
                results[futures[fut]] = fut.result()
        except FutureTimeout:
            for fut, i in futures.items():
                if i not in results:
                    fut.cancel()
                    results[i] = Result(cases[i], "TIMEOUT")
            # running workers cannot be cancelled; stop them outright
            for proc in list(getattr(pool, "_processes", {}).values()):
                proc.terminate()
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    return [results[i] for i in range(len(cases))]

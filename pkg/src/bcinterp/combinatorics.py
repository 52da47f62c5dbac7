"""Partitions, diagram statistics, interlacing chains and reverse tableaux."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product


class PartitionError(ValueError):
    pass


class OutOfDiagram(PartitionError):
    pass


class NotInBox(PartitionError):
    pass


class NotStrictlyPositive(PartitionError):
    pass


class LengthExceeded(PartitionError):
    pass


class Partition(tuple):
    """Weakly decreasing tuple of positive parts (trailing zeros are dropped)."""

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise PartitionError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PartitionError(f"parts are not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in ("", "0", "()", "empty"):
            return cls(())
        try:
            parts = [int(p) for p in text.split(",") if p.strip() != ""]
        except ValueError:
            raise PartitionError(f"not a comma-separated partition: {text!r}") from None
        return cls(parts)

    def __repr__(self):
        return "Partition(" + ",".join(map(str, self)) + ")"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")" if self else "()"

    def key(self) -> str:
        """Compact label, used for fixtures and report lines."""
        return ",".join(map(str, self)) if self else "0"

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def padded(self, n: int) -> tuple:
        if len(self) > n:
            raise LengthExceeded(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def conjugate(self) -> "Partition":
        return _conjugate(self)

    def n_stat(self) -> int:
        """n(mu) = sum (i-1) mu_i."""
        return sum(i * p for i, p in enumerate(self))

    def contains(self, other) -> bool:
        """True when ``other`` is a subdiagram of ``self``."""
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def squares(self):
        return [(i, j) for i, p in enumerate(self, 1) for j in range(1, p + 1)]

    def skew_squares(self, inner):
        inner = Partition(inner)
        return [(i, j) for i, p in enumerate(self, 1) for j in range(inner.part(i) + 1, p + 1)]

    def sort_key(self):
        # graded-lex: smaller weight first, then lexicographically larger first
        return (self.weight, tuple(-p for p in self))


@lru_cache(maxsize=None)
def _conjugate(mu: tuple) -> Partition:
    if not mu:
        return Partition(())
    return Partition(sum(1 for p in mu if p >= j) for j in range(1, mu[0] + 1))


EMPTY = Partition(())


def partitions_of(k: int, max_length: int, max_part: int | None = None):
    """Partitions of k with at most max_length parts, lex-descending."""
    return list(_partitions_of(k, max_length, k if max_part is None else max_part))


@lru_cache(maxsize=None)
def _partitions_of(k, max_length, max_part):
    if k == 0:
        return (EMPTY,)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions_of(k - first, max_length - 1, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions_upto(max_weight: int, max_length: int):
    """All partitions with weight <= max_weight and at most max_length parts,
    in graded-lex order."""
    if max_weight < 0 or max_length < 0:
        raise PartitionError("bounds must be nonnegative")
    out = []
    for k in range(max_weight + 1):
        out.extend(partitions_of(k, max_length))
    return out


def partitions_in_box(n: int, m: int):
    """Partitions contained in the rectangle (m^n)."""
    return [p for p in partitions_upto(n * m, n) if not p or p[0] <= m]


@dataclass(frozen=True)
class SquareStats:
    i: int
    j: int
    a: int
    l: int
    a_co: int
    l_co: int
    a_mirror: int
    l_mirror: int


def square_stats(mu, n: int, i: int, j: int) -> SquareStats:
    mu = Partition(mu)
    if len(mu) > n:
        raise LengthExceeded(f"{mu} has more than {n} parts")
    if not (1 <= i <= len(mu) and 1 <= j <= mu[i - 1]):
        raise OutOfDiagram(f"square ({i},{j}) is not in {mu}")
    conj = mu.conjugate()
    a = mu[i - 1] - j
    l = conj[j - 1] - i
    return SquareStats(
        i=i,
        j=j,
        a=a,
        l=l,
        a_co=j - 1,
        l_co=i - 1,
        a_mirror=mu[i - 1] + j - 1,
        l_mirror=l + 2 * (n - conj[j - 1]),
    )


def interlaces(nu, mu) -> bool:
    """nu < mu in the interlacing sense mu_1 >= nu_1 >= mu_2 >= nu_2 >= ..."""
    nu, mu = Partition(nu), Partition(mu)
    if len(nu) > len(mu):
        return False
    for i in range(1, len(mu) + 1):
        if not (mu.part(i) >= nu.part(i) >= mu.part(i + 1)):
            return False
    return True


def horizontal_strip(outer, inner) -> bool:
    return interlaces(inner, outer)


def interlacing_below(mu, max_length: int):
    """All nu with nu < mu and at most max_length parts (graded-lex order)."""
    mu = Partition(mu)
    ranges = []
    for i in range(1, max_length + 1):
        lo, hi = mu.part(i + 1), mu.part(i)
        ranges.append(range(lo, hi + 1))
    if len(mu) > max_length + 1:
        return []
    out = [Partition(c) for c in product(*ranges)]
    return sorted(out, key=Partition.sort_key)


@dataclass(frozen=True)
class ReverseTableau:
    """Filling strictly decreasing down columns, weakly decreasing along rows."""

    shape: Partition
    entries: tuple  # ((i, j), value) pairs in row-major order

    def entry(self, i, j):
        return dict(self.entries)[(i, j)]

    def as_dict(self):
        return dict(self.entries)

    def chain(self, n: int):
        """Sub-shapes {entry > r} for r = n, n-1, ..., 0 (from empty to the shape)."""
        ent = self.as_dict()
        out = []
        for r in range(n, -1, -1):
            rows = [0] * len(self.shape)
            for (i, j), v in ent.items():
                if v > r:
                    rows[i - 1] = max(rows[i - 1], j)
            out.append(Partition(rows))
        return out

    def is_valid(self, n: int) -> bool:
        ent = self.as_dict()
        for (i, j), v in ent.items():
            if not 1 <= v <= n:
                return False
            if (i, j + 1) in ent and ent[(i, j + 1)] > v:
                return False
            if (i + 1, j) in ent and ent[(i + 1, j)] >= v:
                return False
        return True


def chains(mu, n: int):
    """Chains empty = l0 < l1 < ... < ln = mu of interlacing partitions,
    with l_r having at most r parts."""
    mu = Partition(mu)
    if len(mu) > n:
        return []
    return [list(c) for c in _chains(mu, n)]


@lru_cache(maxsize=None)
def _chains(mu, n):
    if n == 0:
        return ((EMPTY,),) if not mu else ()
    out = []
    for nu in interlacing_below(mu, n - 1):
        for c in _chains(nu, n - 1):
            out.append(c + (mu,))
    return tuple(out)


def tableau_from_chain(chain) -> ReverseTableau:
    """Entry of a square = n - r for the first l_r (r from 0) containing it,
    i.e. squares of l_r / l_(r-1) carry entry n - r + 1."""
    n = len(chain) - 1
    shape = chain[-1]
    ent = {}
    for r in range(1, n + 1):
        for sq in chain[r].skew_squares(chain[r - 1]):
            ent[sq] = n - r + 1
    return ReverseTableau(shape, tuple(sorted(ent.items())))


def reverse_tableaux(mu, n: int):
    """All reverse tableaux of shape mu with entries in {1..n}."""
    mu = Partition(mu)
    if len(mu) > n:
        raise LengthExceeded(f"{mu} has more than {n} parts")
    return [tableau_from_chain(c) for c in chains(mu, n)]


def reverse_tableaux_bruteforce(mu, n: int):
    """Enumerate fillings directly (test oracle)."""
    mu = Partition(mu)
    sqs = mu.squares()
    out = []
    for values in product(range(1, n + 1), repeat=len(sqs)):
        t = ReverseTableau(mu, tuple(zip(sqs, values)))
        if t.is_valid(n):
            out.append(t)
    return out


def tilde(mu, n: int, m: int) -> Partition:
    """(n - mu'_m, ..., n - mu'_1) for mu inside the box (m^n)."""
    mu = Partition(mu)
    if len(mu) > n or (mu and mu[0] > m):
        raise NotInBox(f"{mu} is not contained in ({m}^{n})")
    conj = mu.conjugate()
    return Partition(n - conj.part(j) for j in range(m, 0, -1))


def plus_one(mu, n: int) -> Partition:
    return Partition(p + 1 for p in Partition(mu).padded(n))


def minus_one(mu, n: int) -> Partition:
    parts = Partition(mu).padded(n)
    if n == 0 or parts[-1] == 0:
        raise NotStrictlyPositive(f"{Partition(mu)} has fewer than {n} positive parts")
    return Partition(p - 1 for p in parts)


def drop_first(mu) -> Partition:
    return Partition(tuple(Partition(mu))[1:])


def tail_from(mu, i: int) -> Partition:
    """(mu_i, mu_{i+1}, ...)."""
    return Partition(tuple(Partition(mu))[i - 1:])


def shifts(mu, kind: str, n: int | None = None, i: int | None = None) -> Partition:
    if kind == "plus_one":
        return plus_one(mu, n)
    if kind == "minus_one":
        return minus_one(mu, n)
    if kind == "drop_first":
        return drop_first(mu)
    if kind == "tail_from":
        return tail_from(mu, i)
    raise ValueError(f"unknown shift {kind!r}")

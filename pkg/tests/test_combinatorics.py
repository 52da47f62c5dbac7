from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcinterp.combinatorics import (
    LengthExceeded, NotInBox, NotStrictlyPositive, OutOfDiagram, Partition, PartitionError, interlaces,
    interlacing_below, minus_one, partitions_in_box, partitions_upto, plus_one, reverse_tableaux,
    reverse_tableaux_bruteforce, square_stats, tilde,
)

P = Partition


def small_partitions(max_weight=6, max_length=3):
    return st.sampled_from(partitions_upto(max_weight, max_length))


def test_partitions_upto_examples():
    assert partitions_upto(0, 3) == [P()]
    assert partitions_upto(2, 2) == [P(), P((1,)), P((2,)), P((1, 1))]
    assert partitions_upto(3, 1) == [P(), P((1,)), P((2,)), P((3,))]


def test_partition_validation():
    with pytest.raises(PartitionError):
        P((1, 2))
    assert P((2, 1, 0, 0)) == P((2, 1))
    assert P.parse("0") == P() and P.parse("3,1") == P((3, 1))


def test_square_stats_examples():
    s = square_stats((4, 2, 1, 1), 4, 1, 1)
    assert (s.a, s.l, s.a_co, s.l_co, s.a_mirror, s.l_mirror) == (3, 3, 0, 0, 4, 3)
    s = square_stats((1,), 1, 1, 1)
    assert (s.a, s.l, s.a_co, s.l_co, s.a_mirror, s.l_mirror) == (0, 0, 0, 0, 1, 0)
    with pytest.raises(OutOfDiagram):
        square_stats((1,), 1, 1, 2)
    with pytest.raises(LengthExceeded):
        square_stats((1, 1), 1, 1, 1)


@given(small_partitions())
def test_arm_leg_sums(mu):
    # sum of arms is n(mu') and sum of legs is n(mu)
    stats = [square_stats(mu, 3, i, j) for i, j in mu.squares()]
    assert sum(s.l for s in stats) == mu.n_stat()
    assert sum(s.a for s in stats) == mu.conjugate().n_stat()
    assert sum(s.a_co for s in stats) == mu.conjugate().n_stat()


@given(small_partitions())
def test_conjugate_involution(mu):
    assert mu.conjugate().conjugate() == mu
    assert mu.conjugate().weight == mu.weight


def test_interlacing_examples():
    assert interlaces((2, 1), (3, 1))
    assert interlaces((3, 1), (3, 1))
    assert not interlaces((3,), (2, 2))


@given(small_partitions(), small_partitions())
def test_interlacing_below_complete(mu, nu):
    below = interlacing_below(mu, 2)
    if len(nu) <= 2:
        assert (nu in below) == interlaces(nu, mu)


def test_tableaux_examples():
    assert len(reverse_tableaux((1,), 2)) == 2
    assert len(reverse_tableaux((1, 1), 2)) == 1
    assert len(reverse_tableaux((), 3)) == 1


@given(small_partitions(4, 3), st.integers(1, 3))
def test_tableaux_match_bruteforce(mu, n):
    if len(mu) > n:
        return
    fast = {t.entries for t in reverse_tableaux(mu, n)}
    slow = {t.entries for t in reverse_tableaux_bruteforce(mu, n)}
    assert fast == slow
    assert all(t.is_valid(n) for t in reverse_tableaux(mu, n))


def test_tilde_examples():
    assert tilde((2, 1), 2, 2) == P((1,))
    assert tilde((), 1, 1) == P((1,))
    assert tilde((3, 3), 2, 3) == P()
    with pytest.raises(NotInBox):
        tilde((3,), 2, 2)


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_tilde_involution(n, m, data):
    mu = data.draw(st.sampled_from(partitions_in_box(n, m)))
    mt = tilde(mu, n, m)
    assert tilde(mt, m, n) == mu
    assert mu.weight + mt.weight == n * m


def test_shifts():
    assert plus_one((2,), 2) == P((3, 1))
    assert minus_one((2, 1), 2) == P((1,))
    with pytest.raises(NotStrictlyPositive):
        minus_one((1,), 2)

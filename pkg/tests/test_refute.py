from __future__ import annotations

import json

import pytest

from bcinterp.arith import parse, rf
from bcinterp.interp import norm_H, pstar_solve
from bcinterp.refute import InsufficientProbes, f_closed_form, recheck, refute, vanishing_pattern


def test_closed_form_examples():
    assert f_closed_form(0) == 1
    assert rf(f_closed_form(1)) == parse("(x1 - 1)*(1 - 1/(s^2*x1))")
    assert rf(f_closed_form(2).substitute_terms({"x1": (1, {"qh": 4})})) == norm_H((2,), 1)


@pytest.mark.parametrize("m", range(5))
def test_closed_form_is_solve(m):
    assert rf(f_closed_form(m)) == pstar_solve((m,), 1).value


def test_certificate_d1():
    cert = refute(1, 3, 4)
    assert cert.valid and recheck(cert)
    assert [e["qh"] for e in cert.r_plus] == [2, 4, 6, 8]
    assert cert.probes == [2, 3, 4, 5]
    for m, w in cert.witnesses.items():
        assert w == norm_H((m,), 1) and not w.is_zero()


def test_certificate_d3():
    cert = refute(3, 6, 7)
    assert cert.valid
    assert [e["qh"] // 2 for e in cert.r_plus] == list(range(3, 10))


def test_insufficient_probes():
    with pytest.raises(InsufficientProbes):
        refute(1, 3, 2)
    with pytest.raises(ValueError):
        refute(0, 3)


def test_vanishing_pattern_needs_m_at_least_2d():
    # below m = 2d the non-leading shifts leave the zero set of f_m
    assert vanishing_pattern(f_closed_form(1), 1, 1) is None
    assert vanishing_pattern(f_closed_form(2), 2, 1) is not None


def test_root_sets_disjoint_and_distinct():
    cert = refute(2, 5)
    plus = {tuple(sorted(e.items())) for e in cert.r_plus}
    minus = {tuple(sorted(e.items())) for e in cert.r_minus}
    assert len(plus) == len(minus) == 6 and not plus & minus


def test_json_certificate():
    obj = json.loads(refute(2, 5).to_json())
    assert obj["valid"] and obj["r_plus"][0] == "q^2" and obj["pole_budget"] == 0
    assert refute(1, 2, 6).pole_budget == 3


def test_tampered_certificate_fails_recheck():
    cert = refute(1, 2)
    cert.witnesses[2] = rf(0)
    assert not recheck(cert)

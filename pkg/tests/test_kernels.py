from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcinterp import _kernels
from bcinterp.arith.laurent import LaurentPolynomial

needs_numba = pytest.mark.skipif(not _kernels.USING_NUMBA, reason="numba unavailable")


def reference(ka, ca, kb, cb):
    acc = {}
    for k1, c1 in zip(ka.tolist(), ca.tolist()):
        for k2, c2 in zip(kb.tolist(), cb.tolist()):
            acc[k1 + k2] = acc.get(k1 + k2, 0) + c1 * c2
    keys = sorted(k for k, c in acc.items() if c)
    return keys, [acc[k] for k in keys]


@st.composite
def operands(draw, span):
    size = draw(st.integers(1, 40))
    keys = draw(st.lists(st.integers(0, span), min_size=size, max_size=size, unique=True))
    coefs = draw(st.lists(st.integers(-30, 30).filter(bool), min_size=size, max_size=size))
    return np.array(keys, dtype=np.int64), np.array(coefs, dtype=np.int64)


@pytest.mark.parametrize("use_numba", [False, pytest.param(True, marks=needs_numba)])
@given(a=operands(500), b=operands(500), sparse=st.booleans())
def test_kernels_match_reference(use_numba, a, b, sparse):
    (ka, ca), (kb, cb) = a, b
    key_range = (1 << 40) if sparse else 1001
    keys, coefs = _kernels.mul_terms(ka, ca, kb, cb, key_range, use_numba=use_numba)
    assert (keys.tolist(), coefs.tolist()) == reference(ka, ca, kb, cb)


def test_cancellation_drops_zeros():
    ka = np.array([0, 1], dtype=np.int64)
    ca = np.array([1, 1], dtype=np.int64)
    kb = np.array([0, 1], dtype=np.int64)
    cb = np.array([1, -1], dtype=np.int64)
    for use in (False, _kernels.USING_NUMBA):
        for key_range in (3, 1 << 40):
            keys, coefs = _kernels.mul_terms(ka, ca, kb, cb, key_range, use_numba=use)
            assert keys.tolist() == [0, 2] and coefs.tolist() == [1, -1]


SCRIPT = (
    "from bcinterp.interp import pstar; from bcinterp.arith import to_text; "
    "from bcinterp import _kernels; print(_kernels.USING_NUMBA); print(to_text(pstar((2, 1), 3)))"
)


def run_with(flag):
    env = dict(os.environ, BCINTERP_JIT=flag)
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return out.stdout.splitlines()


def test_fallback_flag_gives_identical_results():
    off = run_with("0")
    assert off[0] == "False"
    on = run_with("1")
    assert on[1:] == off[1:]


def test_large_product_uses_kernel_path():
    x = LaurentPolynomial.symbol("x1")
    y = LaurentPolynomial.symbol("x2")
    p = (x + y + 1) ** 8
    q = (x - y + 2) ** 8
    prod_kernel = p * q
    # the same product term by term in Python
    acc = LaurentPolynomial.zero()
    for e, c in q.terms.items():
        acc = acc + p * LaurentPolynomial.monomial(dict(zip(q.alphabet, e)), c)
    assert prod_kernel == acc

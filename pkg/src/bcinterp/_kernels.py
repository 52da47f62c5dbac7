"""Hot inner loops of sparse polynomial multiplication.

Both operands arrive as parallel arrays of packed monomial keys (mixed-radix
integers, so that multiplying monomials is adding keys) and int64
coefficients.  Callers guarantee that no partial sum can overflow int64.

The numba path is used unless ``BCINTERP_JIT=0`` is set in the environment
(or numba is unavailable); the pure-numpy path computes the same result.
"""

from __future__ import annotations

import os

import numpy as np

# dense accumulator is used when the packed key range is at most this long
DENSE_LIMIT = 1 << 22
# numpy fallback processes at most this many pair products at once
_CHUNK = 1 << 21

try:
    if os.environ.get("BCINTERP_JIT", "1") == "0":
        raise ImportError("numba disabled by BCINTERP_JIT=0")
    from numba import njit
except ImportError:  # pragma: no cover - exercised via the env flag
    njit = None

USING_NUMBA = njit is not None


def _np_mul_dense(ka, ca, kb, cb, size):
    acc = np.zeros(size, dtype=np.int64)
    step = max(1, _CHUNK // kb.size)
    for start in range(0, ka.size, step):
        k = (ka[start:start + step, None] + kb[None, :]).ravel()
        c = (ca[start:start + step, None] * cb[None, :]).ravel()
        np.add.at(acc, k, c)
    nz = np.flatnonzero(acc)
    return nz.astype(np.int64), acc[nz]


def _merge_sorted(keys, coefs):
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    coefs = coefs[order]
    if keys.size == 0:
        return keys, coefs
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    sums = np.add.reduceat(coefs, starts)
    keep = sums != 0
    return keys[starts][keep], sums[keep]


def _np_mul_sparse(ka, ca, kb, cb):
    step = max(1, _CHUNK // kb.size)
    parts_k, parts_c = [], []
    for start in range(0, ka.size, step):
        k = (ka[start:start + step, None] + kb[None, :]).ravel()
        c = (ca[start:start + step, None] * cb[None, :]).ravel()
        k, c = _merge_sorted(k, c)
        parts_k.append(k)
        parts_c.append(c)
    if len(parts_k) == 1:
        return parts_k[0], parts_c[0]
    return _merge_sorted(np.concatenate(parts_k), np.concatenate(parts_c))


if USING_NUMBA:

    @njit(cache=True)
    def _nb_mul_dense(ka, ca, kb, cb, size):
        acc = np.zeros(size, dtype=np.int64)
        for i in range(ka.size):
            base = ka[i]
            c = ca[i]
            for j in range(kb.size):
                acc[base + kb[j]] += c * cb[j]
        count = 0
        for p in range(size):
            if acc[p] != 0:
                count += 1
        keys = np.empty(count, dtype=np.int64)
        coefs = np.empty(count, dtype=np.int64)
        w = 0
        for p in range(size):
            if acc[p] != 0:
                keys[w] = p
                coefs[w] = acc[p]
                w += 1
        return keys, coefs

    @njit(cache=True)
    def _nb_mul_sparse(ka, ca, kb, cb):
        # sort both operands; row i (a_i + b_j over j) is then increasing,
        # and the rows are merged through a binary heap keyed on their heads
        oa = np.argsort(ka)
        ob = np.argsort(kb)
        ka = ka[oa]
        ca = ca[oa]
        kb = kb[ob]
        cb = cb[ob]
        m = ka.size
        nb = kb.size
        heap_key = np.empty(m, dtype=np.int64)
        heap_row = np.empty(m, dtype=np.int64)
        col = np.zeros(m, dtype=np.int64)
        for i in range(m):
            heap_key[i] = ka[i] + kb[0]
            heap_row[i] = i
        size = m
        out_k = np.empty(m * nb, dtype=np.int64)
        out_c = np.empty(m * nb, dtype=np.int64)
        w = -1
        while size > 0:
            key = heap_key[0]
            r = heap_row[0]
            c = ca[r] * cb[col[r]]
            if w >= 0 and out_k[w] == key:
                out_c[w] += c
            else:
                if w >= 0 and out_c[w] == 0:
                    w -= 1
                w += 1
                out_k[w] = key
                out_c[w] = c
            col[r] += 1
            if col[r] < nb:
                heap_key[0] = ka[r] + kb[col[r]]
            else:
                size -= 1
                heap_key[0] = heap_key[size]
                heap_row[0] = heap_row[size]
            # sift down
            p = 0
            while True:
                lft = 2 * p + 1
                if lft >= size:
                    break
                small = lft
                if lft + 1 < size and heap_key[lft + 1] < heap_key[lft]:
                    small = lft + 1
                if heap_key[small] >= heap_key[p]:
                    break
                tk = heap_key[p]
                tr = heap_row[p]
                heap_key[p] = heap_key[small]
                heap_row[p] = heap_row[small]
                heap_key[small] = tk
                heap_row[small] = tr
                p = small
        if w >= 0 and out_c[w] == 0:
            w -= 1
        return out_k[:w + 1].copy(), out_c[:w + 1].copy()


def mul_terms(ka, ca, kb, cb, key_range, use_numba=None):
    """Multiply two packed sparse polynomials with int64 coefficients.

    ``key_range`` is an exclusive upper bound for every product key.
    Returns ``(keys, coefs)`` with zero coefficients dropped; key order is
    ascending.
    """
    use_numba = USING_NUMBA if use_numba is None else (use_numba and USING_NUMBA)
    ka = np.ascontiguousarray(ka, dtype=np.int64)
    kb = np.ascontiguousarray(kb, dtype=np.int64)
    ca = np.ascontiguousarray(ca, dtype=np.int64)
    cb = np.ascontiguousarray(cb, dtype=np.int64)
    dense = key_range <= DENSE_LIMIT
    if use_numba:
        if dense:
            return _nb_mul_dense(ka, ca, kb, cb, key_range)
        return _nb_mul_sparse(ka, ca, kb, cb)
    if dense:
        return _np_mul_dense(ka, ca, kb, cb, key_range)
    return _np_mul_sparse(ka, ca, kb, cb)

"""Time the packed-key multiplication kernels: numba vs the numpy fallback,
plus one end-to-end construction.  Usage: python3 benchmarks/bench_kernels.py
[--repeat N] [--seed S]."""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from bcinterp import _kernels


def random_operand(rng, terms, key_span, coef_span=50):
    keys = np.sort(rng.choice(key_span, size=terms, replace=False)).astype(np.int64)
    coefs = rng.integers(-coef_span, coef_span + 1, size=terms).astype(np.int64)
    coefs[coefs == 0] = 1
    return keys, coefs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_kernel(repeat, seed):
    rng = np.random.default_rng(seed)
    rows = []
    for terms, span, label in [(200, 10_000, "dense small"), (2000, 200_000, "dense large"),
                               (2000, 1 << 40, "sparse")]:
        ka, ca = random_operand(rng, terms, span)
        kb, cb = random_operand(rng, terms, span)
        key_range = 2 * span
        ref = _kernels.mul_terms(ka, ca, kb, cb, key_range, use_numba=False)
        row = [label, terms]
        for use in (False, True):
            if use and not _kernels.USING_NUMBA:
                row.append(float("nan"))
                continue
            out = _kernels.mul_terms(ka, ca, kb, cb, key_range, use_numba=use)  # warm-up / compile
            assert np.array_equal(out[0], ref[0]) and np.array_equal(out[1], ref[1])
            row.append(best_of(lambda: _kernels.mul_terms(ka, ca, kb, cb, key_range, use_numba=use), repeat))
        rows.append(row)
    print(f"{'case':12} {'terms':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for label, terms, t_np, t_nb in rows:
        print(f"{label:12} {terms:6d} {t_np:10.5f} {t_nb:10.5f} {t_np / t_nb:8.1f}")


END_TO_END = (
    "import time; from bcinterp.interp import verify_pieri; t = time.perf_counter(); "
    "assert verify_pieri((2, 1), 3); print(f'{time.perf_counter() - t:.2f}')"
)


def bench_end_to_end():
    print("\nend to end: Pieri check for mu=(2,1), n=3 (fresh process, includes JIT compile)")
    for flag in ("0", "1"):
        env = dict(os.environ, BCINTERP_JIT=flag)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        print(f"  BCINTERP_JIT={flag}: {out.stdout.strip()} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-end-to-end", action="store_true")
    args = parser.parse_args()
    print(f"numba available: {_kernels.USING_NUMBA}")
    bench_kernel(args.repeat, args.seed)
    if not args.no_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()

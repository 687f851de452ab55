"""Time the batch W_m(F_p) kernels: numba against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first numba call includes JIT compilation (cached on disk afterwards), so
it is reported separately from the warm timings.
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from cohenwitt.witt import _kernels


def all_pairs(p: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    digits = np.array(list(itertools.product(range(p), repeat=m)), dtype=np.int64)
    n = len(digits)
    x = np.repeat(digits, n, axis=0)
    y = np.tile(digits, (n, 1))
    return x, y


def bench(p: int, m: int, repeat: int) -> dict:
    x, y = all_pairs(p, m)
    out = {"p": p, "m": m, "pairs": len(x)}
    t0 = time.perf_counter()
    ref = {op: _kernels.batch_numpy(op, x, y, p) for op in ("add", "mul")}
    out["numpy_s"] = time.perf_counter() - t0
    if _kernels.HAVE_NUMBA:
        t0 = time.perf_counter()
        _kernels.batch_numba("add", x[:1], y[:1], p)
        out["numba_first_call_s"] = time.perf_counter() - t0
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            got = {op: _kernels.batch_numba(op, x, y, p) for op in ("add", "mul")}
            best = min(best, time.perf_counter() - t0)
        out["numba_s"] = best
        out["agree"] = all(np.array_equal(ref[op], got[op]) for op in ref)
    return out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    cases = [(2, 9), (3, 5), (5, 4), (5, 2)]
    print(f"{'p':>2} {'m':>2} {'pairs':>8} {'numpy s':>9} {'numba s':>9} {'jit s':>7} agree")
    for p, m in cases:
        r = bench(p, m, args.repeat)
        print(f"{r['p']:>2} {r['m']:>2} {r['pairs']:>8} {r['numpy_s']:>9.3f} "
              f"{r.get('numba_s', float('nan')):>9.3f} {r.get('numba_first_call_s', float('nan')):>7.2f} "
              f"{r.get('agree', '-')}")


if __name__ == "__main__":
    main()

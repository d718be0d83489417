"""Compare the numba and numpy signed-permutation kernels.

    python3 benchmarks/bench_kernels.py [--n 6] [--repeat 5]

Kernel timings run both backends in one process on the elements of B_n.
The closure timing runs `enumerate_group` in two subprocesses, one with
WEYLSIG_DISABLE_NUMBA=1, so the whole oracle path is measured.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from weylsig import _kernels as K
from weylsig.oracle import enumerate_group

CLOSURE = "import time; t=time.perf_counter(); from weylsig.oracle import enumerate_group; enumerate_group('{tag}', {n}); print(time.perf_counter()-t)"


def kernel_table(n: int, repeat: int) -> list[tuple[str, float, float | None]]:
    w = enumerate_group("B", n).elements
    x = w[::-1].copy()
    cases = [
        ("compose", lambda: K.compose_np(w, x), lambda: K.compose(w, x)),
        ("inverse", lambda: K.inverse_np(w), lambda: K.inverse(w)),
        ("encode", lambda: K.encode_np(w), lambda: K.encode(w)),
        ("det", lambda: K.det_np(w), lambda: K.det(w)),
    ]
    rows = []
    for name, slow, fast in cases:
        if K.NUMBA_AVAILABLE:
            assert np.array_equal(slow(), fast()), name
            fast()  # compile outside the timer
        t_np = min(timeit.repeat(slow, number=1, repeat=repeat))
        t_nb = min(timeit.repeat(fast, number=1, repeat=repeat)) if K.NUMBA_AVAILABLE else None
        rows.append((name, t_np, t_nb))
    return rows


def closure_time(tag: str, n: int, disable: bool) -> float:
    env = dict(os.environ)
    env["WEYLSIG_DISABLE_NUMBA"] = "1" if disable else "0"
    out = subprocess.run(
        [sys.executable, "-c", CLOSURE.format(tag=tag, n=n)], env=env, capture_output=True, text=True, check=True
    )
    return float(out.stdout.strip())


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"backend in this process: {K.BACKEND}")
    print(f"kernels on the {len(enumerate_group('B', args.n).elements)} elements of B{args.n}")
    print(f"{'kernel':<10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, t_np, t_nb in kernel_table(args.n, args.repeat):
        if t_nb is None:
            print(f"{name:<10}{t_np * 1e3:>12.2f}{'-':>12}{'-':>10}")
        else:
            print(f"{name:<10}{t_np * 1e3:>12.2f}{t_nb * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")

    print(f"\ngroup closure of B{args.n} (fresh interpreter, includes JIT cache load)")
    a = closure_time("B", args.n, disable=True)
    b = closure_time("B", args.n, disable=False)
    print(f"numpy {a:.3f}s  numba {b:.3f}s  speedup {a / b:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

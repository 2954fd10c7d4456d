"""Time the database random-walk kernel: numba against the numpy twin.

    python benchmarks/bench_kernels.py [--walks 20000] [--repeat 5]

Both backends get the same batches; the script checks that they agree
before reporting walks per second.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from pauliforge import _kernels
from pauliforge.clifford_db import _KIND_CODE, DbTask, _clifford_table
from pauliforge.pauli import anticommute_raw

CASES = [
    ("compress", 3, [(0, 1), (1, 2)], ["ZZX", "YIZ"], 0, 3),
    ("implement", 4, [(0, 1), (1, 2), (2, 3)], ["XYZZ", "ZZIX", "IXXY"], None, 6),
    ("simultaneous", 4, [(0, 1), (1, 2), (1, 3)], ["ZZIX", "IXYZ"], None, 6),
]


def batch(task: DbTask, walks: int, k: int, seed: int):
    rng = np.random.default_rng(seed)
    eu = np.array([u for u, _ in task.edges])
    ev = np.array([v for _, v in task.edges])
    px = np.array([p[0] for p in task.patterns])
    pz = np.array([p[1] for p in task.patterns])
    anti = np.array([[bool(anticommute_raw(*a, *b)) for b in task.patterns] for a in task.patterns])
    draws = (
        rng.integers(0, len(task.edges), size=(walks, k)),
        rng.integers(0, 24, size=(walks, k)),
        rng.integers(0, 24, size=(walks, k)),
        rng.integers(0, 2, size=(walks, k)),
    )
    return (_KIND_CODE[task.kind], task.n, eu, ev, px, pz, anti, task.removed or 0, _clifford_table(), *draws)


def best_time(args, use_numba: bool, repeat: int) -> tuple[float, np.ndarray]:
    out = _kernels.first_success(*args, use_numba=use_numba)  # warm-up and jit
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        _kernels.first_success(*args, use_numba=use_numba)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--walks", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"backend default: {_kernels.backend()}")
    for kind, n, edges, pats, removed, k in CASES:
        task = DbTask.from_letters(kind, n, edges, pats, removed)
        a = batch(task, args.walks, k, seed=1)
        t_np, r_np = best_time(a, False, args.repeat)
        line = f"{kind:12s} n={n} K={k}  numpy {args.walks / t_np:11.0f} walks/s"
        if _kernels.HAVE_NUMBA:
            t_nb, r_nb = best_time(a, True, args.repeat)
            if not np.array_equal(r_nb, r_np):
                print("backends disagree", file=sys.stderr)
                return 1
            line += f"  numba {args.walks / t_nb:11.0f} walks/s  speedup {t_np / t_nb:5.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())

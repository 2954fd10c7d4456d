"""Directional sweeps: Pauli methods on random Majorana ansatze, Clifford variants on random Cliffords.

    python benchmarks/directional.py pauli  [--save-db PATH]
    python benchmarks/directional.py clifford [--save-db PATH]

Prints one line per cell with mean CNOT counts and the margins the
acceptance suite checks.  ``--save-db`` writes the database afterwards,
including entries generated on demand during the sweep.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from pauliforge.arch import path_graph
from pauliforge.bench import gen_ansatz
from pauliforge.cer import from_circuit
from pauliforge.clifford_db import CliffordDb, load_default_db
from pauliforge.clifford_synth import CliffordSpec, random_clifford_circuit, synthesize_clifford
from pauliforge.pauli_synth import SynthesisConfig, synthesize

PAULI_GRID = [(n, mapping, m) for n in (8, 10, 12) for mapping in ("jw", "bk") for m in (10, 30, 50)]
CLIFFORD_GRID = [(n, k) for n in (6, 8, 10) for k in (10, 30, 60)]
SEEDS = range(20)


def pauli_cell(n: int, mapping: str, m: int, db: CliffordDb, seeds=SEEDS) -> dict[str, float]:
    g = path_graph(n)
    out = {}
    for method in ("ss", "ls", "mpls"):
        counts = []
        for seed in seeds:
            targets, angles = gen_ansatz({"type": "random4majorana", "n_modes": n, "n_paulis": m, "mapping": mapping}, seed)
            _, rep = synthesize(targets, angles, g, None, SynthesisConfig(method=method, seed=seed), db)
            counts.append(rep.total_cnots)
        out[method] = float(np.mean(counts))
    return out


def clifford_cell(n: int, k: int, db: CliffordDb, seeds=SEEDS) -> dict[str, float]:
    g = path_graph(n)
    counts: dict[str, list[int]] = {}
    for seed in seeds:
        cer = from_circuit(random_clifford_circuit(n, k, seed))
        for variant in ("paulipair", "paulipair-uo", "mpcs", "mpcs-uo"):
            circ, _ = synthesize_clifford(CliffordSpec(cer, g, variant), db)
            counts.setdefault(variant, []).append(circ.cnot_count())
    return {v: float(np.mean(c)) for v, c in counts.items()}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("which", choices=("pauli", "clifford"))
    ap.add_argument("--save-db")
    args = ap.parse_args(argv)
    db = load_default_db()
    t0 = time.time()
    if args.which == "pauli":
        for n, mapping, m in PAULI_GRID:
            r = pauli_cell(n, mapping, m, db)
            print(
                f"n={n:2d} {mapping} M={m:2d}  ss={r['ss']:7.2f} ls={r['ls']:7.2f} mpls={r['mpls']:7.2f}"
                f"  ls-mpls={r['ls'] - r['mpls']:6.2f} ss-mpls={r['ss'] - r['mpls']:6.2f}  t={time.time() - t0:.0f}s",
                flush=True,
            )
            if args.save_db:
                db.save(args.save_db)
    else:
        for n, k in CLIFFORD_GRID:
            r = clifford_cell(n, k, db)
            print(
                f"n={n:2d} K={k:2d}  " + " ".join(f"{v}={x:6.2f}" for v, x in r.items()) + f"  t={time.time() - t0:.0f}s",
                flush=True,
            )
            if args.save_db:
                db.save(args.save_db)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``pauliforge <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .arch import parse_arch
from .bench import (
    ExperimentSpec,
    gen_ansatz,
    load_circuit,
    report_to_csv,
    report_to_json,
    run_sweep,
    targets_from_json,
    targets_to_json,
)
from .cer import from_circuit
from .circuit import Circuit
from .clifford_db import CliffordDb, build_database, default_db_path
from .clifford_synth import VARIANTS, CliffordSpec, cer_from_json, synthesize_clifford
from .pauli_synth import METHODS, SynthesisConfig, synthesize
from .verify import (
    dense_unitary,
    equivalent_up_to_phase,
    network_unitary,
    pauli_network_sound,
    tableau_equivalent,
)


def _load_db(path: str | None) -> CliffordDb:
    p = Path(path) if path else default_db_path()
    if p.exists():
        return CliffordDb.load(p)
    if path:
        raise SystemExit(f"database {path} not found")
    return CliffordDb()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_db_build(args) -> int:
    db = CliffordDb.load(args.out) if args.resume and Path(args.out).exists() else None
    if db is None:
        db = CliffordDb(seed=args.seed, attempts=args.attempts, patience=False)

    def progress(i, total):
        if args.verbose and (i % 100 == 0 or i == total):
            print(f"{i}/{total} keys", file=sys.stderr)

    build_database(args.shapes, args.seed, args.attempts, db=db, progress=progress)
    db.save(args.out)
    print(f"{len(db)} entries written to {args.out}")
    return 0


def cmd_db_verify(args) -> int:
    db = CliffordDb.load(args.path, verify=False)
    bad = db.verify_all()
    for key, reason in bad:
        print(f"FAIL {key}: {reason}")
    print(f"{len(db) - len(bad)}/{len(db)} entries verified")
    return 1 if bad else 0


def cmd_synth(args) -> int:
    targets, angles = targets_from_json(Path(args.targets).read_text())
    g = parse_arch(args.arch)
    cfg = SynthesisConfig(
        method=args.method,
        k_max=args.k_max if args.k_max is not None else (4 if args.method == "mpr" else 3),
        k_prime_max=args.k_prime_max,
        reset_policy=args.reset,
        leaf_choice=args.leaf_choice,
        seed=args.seed,
    )
    db = _load_db(args.db) if args.method in ("ls", "mpls", "mpr") else CliffordDb()
    circ, rep = synthesize(targets, angles, g, None, cfg, db)
    _write(args.report, json.dumps(rep.to_dict(), indent=1, sort_keys=True) + "\n")
    if args.circuit:
        Path(args.circuit).write_text(circ.to_json() + "\n")
    if args.qasm:
        Path(args.qasm).write_text(circ.to_qasm())
        params = circ.parameters()
        if params:
            Path(args.qasm + ".params.json").write_text(json.dumps(params) + "\n")
    if args.save_db:
        db.save(args.save_db)
    return 0


def cmd_cliff_synth(args) -> int:
    cer = cer_from_json(json.loads(Path(args.input).read_text()))
    g = parse_arch(args.arch)
    db = _load_db(args.db) if args.variant.startswith("mpcs") else None
    circ, perm = synthesize_clifford(CliffordSpec(cer, g, args.variant), db)
    out = {"circuit": json.loads(circ.to_json()), "permutation": perm, "cnots": circ.cnot_count()}
    _write(args.out, json.dumps(out, indent=1, sort_keys=True) + "\n")
    if args.qasm:
        Path(args.qasm).write_text(circ.to_qasm())
    return 0


def _assignment(names, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    return {name: float(rng.uniform(-np.pi, np.pi)) for name in sorted(set(names))}


def cmd_verify(args) -> int:
    circ = load_circuit(args.circuit)
    against = args.against
    if against.endswith(".json") and not _is_circuit_json(against):
        targets, angles = targets_from_json(Path(against).read_text())
        phys = [t.embed(circ.n, list(range(t.n))) for t in targets]
        if args.mode == "sound":
            rep = pauli_network_sound(circ, phys)
        elif args.mode == "dense":
            names = [a for a in angles if isinstance(a, str)] + circ.parameters()
            assign = _assignment(names, args.seed)
            vals = [assign[a] if isinstance(a, str) else float(a) for a in angles]
            rep = equivalent_up_to_phase(dense_unitary(circ, assign), network_unitary(phys, vals), args.tol)
        else:
            raise SystemExit("tableau mode compares two Clifford circuits")
    else:
        other = load_circuit(against)
        if args.mode == "tableau":
            rep = tableau_equivalent(circ, other)
        elif args.mode == "dense":
            assign = _assignment(circ.parameters() + other.parameters(), args.seed)
            rep = equivalent_up_to_phase(dense_unitary(circ, assign), dense_unitary(other, assign), args.tol)
        else:
            raise SystemExit("sound mode needs a targets file")
    print(json.dumps({"kind": rep.kind, "passed": rep.passed, "max_deviation": rep.max_deviation}, sort_keys=True))
    return 0 if rep.passed else 1


def _is_circuit_json(path: str) -> bool:
    data = json.loads(Path(path).read_text())
    return isinstance(data, dict) and "ops" in data


def cmd_bench(args) -> int:
    spec = ExperimentSpec.from_json(Path(args.spec).read_text())
    db = _load_db(args.db)
    report = run_sweep(spec, db, workers=args.workers, db_path=args.db)
    _write(args.out, report_to_json(report))
    if args.csv:
        Path(args.csv).write_text(report_to_csv(report))
    return 0


def cmd_gen(args) -> int:
    spec = json.loads(Path(args.spec).read_text())
    gen = spec.get("generator", spec)
    targets, angles = gen_ansatz(gen, args.seed)
    _write(args.out, targets_to_json(targets, angles))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pauliforge", description="Pauli-network and Clifford synthesis")
    sub = p.add_subparsers(dest="command", required=True)

    db = sub.add_parser("db", help="Clifford database tools")
    dbs = db.add_subparsers(dest="db_command", required=True)
    b = dbs.add_parser("build", help="generate the offline database")
    b.add_argument("--shapes", default="auto", help="auto, all, or comma list (path2,path3,path4,claw,...)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--attempts", type=int, default=200_000)
    b.add_argument("--out", required=True)
    b.add_argument("--resume", action="store_true", help="extend an existing file")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(fn=cmd_db_build)
    v = dbs.add_parser("verify", help="re-verify every entry of a database file")
    v.add_argument("path")
    v.set_defaults(fn=cmd_db_verify)

    s = sub.add_parser("synth", help="synthesize a Pauli network")
    s.add_argument("--method", choices=METHODS, default="mpls")
    s.add_argument("--arch", required=True, help="path:N, heavyhex:D or file:PATH")
    s.add_argument("--db")
    s.add_argument("--targets", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k-max", type=int)
    s.add_argument("--k-prime-max", type=int, default=8)
    s.add_argument("--reset", choices=("at_end", "per_list", "none"), default="at_end")
    s.add_argument("--leaf-choice", choices=("random", "min_cnot"), default="random")
    s.add_argument("--report")
    s.add_argument("--circuit", help="write the circuit as JSON")
    s.add_argument("--qasm")
    s.add_argument("--save-db", help="write the database including on-demand entries")
    s.set_defaults(fn=cmd_synth)

    c = sub.add_parser("cliff-synth", help="synthesize a Clifford from its tableau")
    c.add_argument("--variant", choices=VARIANTS, default="mpcs")
    c.add_argument("--arch", required=True)
    c.add_argument("--db")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.add_argument("--qasm")
    c.set_defaults(fn=cmd_cliff_synth)

    vv = sub.add_parser("verify", help="check a circuit against targets or another circuit")
    vv.add_argument("--circuit", required=True)
    vv.add_argument("--against", required=True)
    vv.add_argument("--mode", choices=("dense", "tableau", "sound"), default="dense")
    vv.add_argument("--seed", type=int, default=0, help="seed for symbolic angle values")
    vv.add_argument("--tol", type=float, default=1e-9)
    vv.set_defaults(fn=cmd_verify)

    be = sub.add_parser("bench", help="run an experiment sweep")
    be.add_argument("--spec", required=True)
    be.add_argument("--out")
    be.add_argument("--csv")
    be.add_argument("--db")
    be.add_argument("--workers", type=int, default=1, help="process pool size; output is identical for any value")
    be.set_defaults(fn=cmd_bench)

    gg = sub.add_parser("gen", help="write a random ansatz targets file")
    gg.add_argument("--spec", required=True)
    gg.add_argument("--seed", type=int, default=0)
    gg.add_argument("--out")
    gg.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

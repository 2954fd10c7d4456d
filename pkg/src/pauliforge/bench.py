"""Benchmark driver: random ansatz generation, method sweeps, JSON/CSV reports.

An experiment spec is a JSON object::

    {
      "generator": {"type": "random4majorana", "n_modes": 10, "n_paulis": 50, "mapping": "jw"},
      "arch": "path:10",
      "methods": ["ss", "ls", "mpls"],
      "seeds": [0, 1, 2],
      "config": {"k_max": 3, "k_prime_max": 8, "reset_policy": "at_end"}
    }

Generator types: ``random4majorana`` (``n_modes``, ``n_paulis``,
``mapping`` in jw/bk), ``double_excitation`` (``n_modes``, ``n_excitations``,
``mapping``) and ``random_clifford`` (``n``, ``k``).  Pauli methods are
``ss``, ``ls``, ``mpls`` and ``mpr``; Clifford methods are the variants of
:mod:`pauliforge.clifford_synth`.  Reports hold no timing so reruns are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arch import parse_arch
from .cer import from_circuit
from .circuit import Circuit
from .clifford_db import CliffordDb, load_default_db
from .clifford_synth import VARIANTS, CliffordSpec, random_clifford_circuit, synthesize_clifford
from .pauli import FermionMapping, PauliString, majorana_product
from .pauli_synth import (
    METHODS,
    SynthesisConfig,
    double_excitation_targets,
    synthesize,
)
from .verify import check_connectivity, pauli_network_sound, tableau_equivalent

__all__ = [
    "ExperimentSpec",
    "VerificationError",
    "gen_ansatz",
    "targets_to_json",
    "targets_from_json",
    "run_sweep",
    "report_to_csv",
    "validate_report",
]

GENERATORS = ("random4majorana", "double_excitation", "random_clifford")


class VerificationError(RuntimeError):
    """A synthesized circuit failed its check; sweeps abort on these."""


@dataclass
class ExperimentSpec:
    generator: dict
    arch: str
    methods: list[str]
    seeds: list[int]
    config: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        kind = self.generator.get("type")
        if kind not in GENERATORS:
            raise ValueError(f"generator type must be one of {GENERATORS}")
        allowed = VARIANTS if kind == "random_clifford" else METHODS
        for m in self.methods:
            if m not in allowed:
                raise ValueError(f"method {m!r} not valid for {kind}")
        if not self.seeds:
            raise ValueError("at least one seed")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentSpec:
        return cls(
            dict(data["generator"]),
            str(data["arch"]),
            list(data["methods"]),
            [int(s) for s in data["seeds"]],
            dict(data.get("config", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> ExperimentSpec:
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "arch": self.arch,
            "methods": self.methods,
            "seeds": self.seeds,
            "config": self.config,
        }


def _mapping(name: str, n_modes: int) -> FermionMapping:
    if name == "jw":
        return FermionMapping.jw(n_modes)
    if name == "bk":
        return FermionMapping.bk(n_modes)
    raise ValueError(f"unknown mapping {name!r}")


def gen_ansatz(generator: dict, seed: int) -> tuple[list[PauliString], list]:
    """Targets and angles for one instance.

    ``random4majorana`` draws products of four distinct Majoranas with
    symbolic angles ``theta_<l>``; ``double_excitation`` draws random
    distinct mode quadruples with numeric angles.  ``n_paulis`` (or
    ``n_excitations``) below a previous value yields a prefix of it.
    """
    rng = np.random.default_rng(seed)
    kind = generator["type"]
    if kind == "random4majorana":
        n = int(generator["n_modes"])
        mapping = _mapping(generator.get("mapping", "jw"), n)
        if 2 * n < 4:
            raise ValueError("need at least two modes")
        targets = []
        for _ in range(int(generator["n_paulis"])):
            idx = sorted(int(v) for v in rng.choice(2 * n, size=4, replace=False))
            targets.append(majorana_product(mapping, idx))
        return targets, [f"theta_{l}" for l in range(len(targets))]
    if kind == "double_excitation":
        n = int(generator["n_modes"])
        mapping = _mapping(generator.get("mapping", "jw"), n)
        targets, angles = [], []
        for _ in range(int(generator.get("n_excitations", 1))):
            modes = tuple(int(v) for v in rng.choice(n, size=4, replace=False))
            theta = float(rng.uniform(-np.pi, np.pi))
            t, a = double_excitation_targets(mapping, modes, theta)
            targets += t
            angles += a
        return targets, angles
    raise ValueError(f"generator {kind!r} does not produce Pauli targets")


def targets_to_json(targets: Sequence[PauliString], angles: Sequence) -> str:
    return json.dumps([{"pauli": t.label, "angle": a} for t, a in zip(targets, angles)], indent=1) + "\n"


def targets_from_json(text: str) -> tuple[list[PauliString], list]:
    data = json.loads(text)
    targets = [PauliString.from_label(d["pauli"]) for d in data]
    angles = [d["angle"] for d in data]
    return targets, angles


def _pauli_row(spec: ExperimentSpec, method: str, seed: int, db: CliffordDb) -> dict:
    targets, angles = gen_ansatz(spec.generator, seed)
    g = parse_arch(spec.arch)
    cfg_kwargs = dict(spec.config)
    cfg_kwargs.update(method=method, seed=seed)
    cfg = SynthesisConfig(**cfg_kwargs)
    row = {"method": method, "seed": seed, "n_qubits": g.n_phys, "n_targets": len(targets)}
    if not targets:
        row.update(total_cnots=0, cnots_excluding_final_clifford=0, depth=0, verified=True)
        return row
    circ, rep = synthesize(targets, angles, g, None, cfg, db)
    phys = [t.embed(g.n_phys, list(range(t.n))) for t in targets]
    sound = pauli_network_sound(circ, phys)
    if not sound.passed:
        raise VerificationError(f"{method} seed {seed}: unsound circuit at {sound.witness}")
    if not check_connectivity(circ, g):
        raise VerificationError(f"{method} seed {seed}: CNOT off the coupling graph")
    if circ.cnot_count() != rep.total_cnots:
        raise VerificationError("report disagrees with the circuit")
    row.update(
        total_cnots=circ.cnot_count(),
        cnots_excluding_final_clifford=circ.cnot_count_excluding_final_clifford(),
        depth=circ.depth(),
        verified=True,
    )
    return row


def _clifford_row(spec: ExperimentSpec, method: str, seed: int, db: CliffordDb) -> dict:
    n, k = int(spec.generator["n"]), int(spec.generator["k"])
    g = parse_arch(spec.arch)
    if g.n_phys != n:
        raise ValueError("random_clifford n must match the architecture size")
    source = random_clifford_circuit(n, k, seed)
    cer = from_circuit(source)
    circ, perm = synthesize_clifford(CliffordSpec(cer, g, method), db)
    ok = tableau_equivalent(source, circ, None if not method.endswith("-uo") else perm)
    if not ok.passed or not check_connectivity(circ, g):
        raise VerificationError(f"{method} seed {seed}: Clifford mismatch")
    return {
        "method": method,
        "seed": seed,
        "n_qubits": n,
        "n_targets": k,
        "total_cnots": circ.cnot_count(),
        "cnots_excluding_final_clifford": circ.cnot_count(),
        "depth": circ.depth(),
        "verified": True,
    }


_WORKER_DB: CliffordDb | None = None


def _init_worker(db_path: str | None) -> None:
    global _WORKER_DB
    _WORKER_DB = CliffordDb.load(db_path) if db_path else load_default_db()


def _run_cell(spec_dict: dict, method: str, seed: int) -> dict:
    spec = ExperimentSpec.from_dict(spec_dict)
    fn = _clifford_row if spec.generator["type"] == "random_clifford" else _pauli_row
    return fn(spec, method, seed, _WORKER_DB)


def run_sweep(
    spec: ExperimentSpec, db: CliffordDb | None = None, workers: int = 1, db_path: str | None = None
) -> dict:
    """Run every (method, seed) cell and aggregate per method.

    With ``workers > 1`` cells fan out to a process pool; each worker loads
    the database from ``db_path`` (default location if omitted).  Rows are
    gathered in grid order and database entries are seeded per key, so the
    report does not depend on the worker count.
    """
    cells = [(m, s) for m in spec.methods for s in spec.seeds]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(db_path,)) as pool:
            futures = [pool.submit(_run_cell, spec.to_dict(), m, s) for m, s in cells]
            rows = [f.result() for f in futures]
    else:
        db = db if db is not None else load_default_db()
        fn = _clifford_row if spec.generator["type"] == "random_clifford" else _pauli_row
        rows = [fn(spec, m, s, db) for m, s in cells]
    summary = {}
    for method in spec.methods:
        vals = [r["total_cnots"] for r in rows if r["method"] == method and r["verified"]]
        excl = [r["cnots_excluding_final_clifford"] for r in rows if r["method"] == method and r["verified"]]
        summary[method] = {
            "mean": float(np.mean(vals)),
            "min": int(min(vals)),
            "max": int(max(vals)),
            "mean_excluding_final_clifford": float(np.mean(excl)),
            "count": len(vals),
        }
    report = {"spec": spec.to_dict(), "results": rows, "summary": summary}
    validate_report(report)
    return report


_ROW_FIELDS = {
    "method": str,
    "seed": int,
    "n_qubits": int,
    "n_targets": int,
    "total_cnots": int,
    "cnots_excluding_final_clifford": int,
    "depth": int,
    "verified": bool,
}


def validate_report(report: dict) -> None:
    for key in ("spec", "results", "summary"):
        if key not in report:
            raise ValueError(f"report lacks {key!r}")
    for row in report["results"]:
        for name, typ in _ROW_FIELDS.items():
            if not isinstance(row.get(name), typ):
                raise ValueError(f"result row field {name!r} missing or not {typ.__name__}")
    for method, agg in report["summary"].items():
        for name in ("mean", "min", "max", "count"):
            if name not in agg:
                raise ValueError(f"summary for {method} lacks {name!r}")


def report_to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(_ROW_FIELDS), lineterminator="\n")
    writer.writeheader()
    for row in report["results"]:
        writer.writerow({k: row[k] for k in _ROW_FIELDS})
    return buf.getvalue()


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def load_circuit(path: str) -> Circuit:
    """JSON circuit or OpenQASM, picked by file suffix."""
    from pathlib import Path

    from .circuit import parse_qasm

    text = Path(path).read_text()
    if path.endswith(".qasm"):
        return parse_qasm(text)
    return Circuit.from_json(text)

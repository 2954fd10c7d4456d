"""Architecture-aware Clifford synthesis by pairwise register settling.

A Clifford is handled through its CER.  One round settles a logical qubit
``q`` on a physical non-cut node ``p``: afterwards ``CER[p, Z] = Z_q`` and
``CER[p, X] = X_q`` exactly, so every other register commutes with both and
``p`` can leave the graph.  Repeating until the graph is empty resets the
CER to the identity (ordered variants, ``p == q``) or to a relabeling of it
(unordered variants).

``paulipair`` folds ``Z_q`` then ``X_q`` one Pauli at a time; ``mpcs`` also
tries compressing the pair jointly with database entries and keeps the
cheaper circuit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arch import CouplingGraph, induced_subgraph, non_cut_nodes, steiner_tree
from .cer import Cer, single_qubit_cliffords
from .circuit import Circuit, Gate
from .clifford_db import CliffordDb, DatabaseMiss, load_default_db
from .pauli import PauliString

__all__ = [
    "VARIANTS",
    "CliffordSpec",
    "reset_circuit",
    "synthesize_clifford",
    "random_clifford_circuit",
    "cer_from_json",
    "cer_to_json",
]

VARIANTS = ("paulipair", "paulipair-uo", "mpcs", "mpcs-uo")


@dataclass(frozen=True)
class CliffordSpec:
    """What to synthesize.  ``k = 2`` is accepted but rounds still settle one
    logical qubit (two patterns) at a time."""

    source: Cer
    g: CouplingGraph
    variant: str = "mpcs"
    k: int = 1

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.k not in (1, 2):
            raise ValueError("k must be 1 or 2 (at most four database patterns)")
        if not self.source.is_valid():
            raise ValueError("source CER is not a valid frame")
        if self.source.n != self.g.n_phys:
            raise ValueError("CER and graph disagree on the qubit count")


def _state(cer: Cer, g: CouplingGraph):
    from .pauli_synth import _State

    st = _State(g, [], [])
    st.cer = cer.copy()
    return st


def _zq(n: int, q: int) -> tuple[int, int]:
    return 0, 1 << q


def _xq(n: int, q: int) -> tuple[int, int]:
    return 1 << q, 0


def _fix_signs(st, q: int, p: int) -> None:
    c = st.cer
    assert (c.zx[p], c.zz[p]) == (0, 1 << q) and (c.xx[p], c.xz[p]) == (1 << q, 0)
    if c.zp[p]:
        st.apply(Gate("x", (p,)))
    if c.xp[p]:
        st.apply(Gate("z", (p,)))


def _settle_pair(st, q: int, p: int, graph: CouplingGraph) -> None:
    from .pauli_synth import _fold

    az = st.axes(*_zq(st.cer.n, q))
    if az != {p: "Z"}:
        _fold(st, az, graph, p, "Z")
    ax = st.axes(*_xq(st.cer.n, q))
    if ax != {p: "X"}:
        _fold(st, ax, graph, p, "X")
    _fix_signs(st, q, p)


def _local_word_fix(st, q: int, p: int) -> bool:
    base = st.cer
    for word in single_qubit_cliffords():
        c = base.copy()
        for g in word:
            c.apply(Gate(g, (p,)))
        if (c.zx[p], c.zz[p]) == (0, 1 << q) and (c.xx[p], c.xz[p]) == (1 << q, 0):
            st.local(word, p)
            _fix_signs(st, q, p)
            return True
    return False


def _settle_mpcs(st, q: int, p: int, graph: CouplingGraph, db: CliffordDb) -> bool:
    """Joint database compression of ``{Z_q, X_q}`` onto ``p``; ``False`` on a miss."""
    from .pauli_synth import _compress_step, _prune

    n = st.cer.n
    az = st.axes(*_zq(n, q))
    ax = st.axes(*_xq(n, q))
    area = induced_subgraph(graph, steiner_tree(graph, set(az) | set(ax) | {p}).nodes)
    while len(area.nodes) > 1:
        az = st.axes(*_zq(n, q))
        ax = st.axes(*_xq(n, q))
        area = _prune(area, set(az) | set(ax) | {p})
        if len(area.nodes) <= 1:
            break
        cands = sorted(non_cut_nodes(area) - {p})
        best = None
        for r in cands:
            res = _compress_step(st, area, r, [az, ax], db)
            if res is not None:
                cost = sum(g.name == "cx" for g in (res.gates if res else ()))
                if best is None or cost < best[0]:
                    best = (cost, r, res)
        if best is None:
            return False
        _, r, res = best
        for gate in (res.gates if res else ()):
            st.apply(gate)
        area = induced_subgraph(area, area.nodes - {r})
    return _local_word_fix(st, q, p)


def _lower_bound(st, q: int, p: int) -> int:
    n = st.cer.n
    sz = set(st.axes(*_zq(n, q))) | {p}
    sx = set(st.axes(*_xq(n, q))) | {p}
    return max(len(sz), len(sx)) - 1


def reset_circuit(
    cer: Cer,
    g: CouplingGraph,
    variant: str = "mpcs",
    db: CliffordDb | None = None,
    k: int = 1,
) -> tuple[list[Gate], dict[int, int]]:
    """Gates that bring ``cer`` to the identity, or to a relabeling for ``-uo`` variants.

    Returns the gates and ``perm`` with ``perm[p] = q`` when logical qubit
    ``q`` was settled on node ``p``.  Qubits outside ``g.nodes`` must
    already be settled in place.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    unordered = variant.endswith("-uo")
    use_db = variant.startswith("mpcs")
    if use_db and db is None:
        db = load_default_db()
    st = _state(cer, g)
    graph = induced_subgraph(g, g.nodes)
    logical = set(g.nodes)
    perm: dict[int, int] = {}
    while graph.nodes:
        noncut = sorted(non_cut_nodes(graph))
        if unordered:
            pairs = [(q, p) for q in sorted(logical) for p in noncut]
        else:
            pairs = [(q, q) for q in noncut if q in logical]
        scored = sorted((_lower_bound(st, q, p), q, p) for q, p in pairs)
        best = None
        for lb, q, p in scored:
            if best is not None and lb >= best[0]:
                break
            trial = st.clone()
            _settle_pair(trial, q, p, graph)
            cand = (trial.cnots - st.cnots, q, p, trial)
            if use_db:
                alt = st.clone()
                try:
                    ok = _settle_mpcs(alt, q, p, graph, db)
                except DatabaseMiss:
                    ok = False
                if ok and alt.cnots - st.cnots < cand[0]:
                    cand = (alt.cnots - st.cnots, q, p, alt)
            if best is None or cand[0] < best[0]:
                best = cand
        _, q, p, st = best
        perm[p] = q
        logical.discard(q)
        graph = induced_subgraph(graph, graph.nodes - {p})
    for v in range(cer.n):
        perm.setdefault(v, v)
    return [op for op in st.ops], perm


def synthesize_clifford(spec: CliffordSpec, db: CliffordDb | None = None) -> tuple[Circuit, list[int]]:
    """Circuit realizing ``spec.source`` (up to the returned output relabeling).

    Ordered variants return the identity permutation and a circuit whose CER
    equals the source, signs included.  Unordered variants realize the
    source as "move qubit ``perm[p]`` to position ``p``, then run the
    circuit", i.e. ``U_source = U_circuit @ P``.
    """
    gates, perm = reset_circuit(spec.source, spec.g, spec.variant, db, spec.k)
    circ = Circuit(spec.source.n, [g.inverse() for g in reversed(gates)])
    return circ, [perm[p] for p in range(spec.source.n)]


def random_clifford_circuit(n: int, k: int, seed: int) -> Circuit:
    """``k`` rounds of: random distinct pair, random one-qubit Clifford on each, CNOT."""
    if n < 2:
        raise ValueError("need at least two qubits")
    if k < 0:
        raise ValueError("k must be non-negative")
    rng = np.random.default_rng(seed)
    words = single_qubit_cliffords()
    circ = Circuit(n)
    for _ in range(k):
        u, v = (int(a) for a in rng.choice(n, size=2, replace=False))
        for q in (u, v):
            for name in words[int(rng.integers(24))]:
                circ.ops.append(Gate(name, (q,)))
        circ.ops.append(Gate("cx", (u, v)))
    return circ


def cer_to_json(cer: Cer) -> dict:
    return {"z_rows": [p.label for p in cer.z_rows], "x_rows": [p.label for p in cer.x_rows]}


def cer_from_json(data: dict) -> Cer:
    return Cer.from_rows(
        [PauliString.from_label(s) for s in data["z_rows"]],
        [PauliString.from_label(s) for s in data["x_rows"]],
    )

"""Pauli-network synthesis: Steiner (SS), lazy (LS), multi-Pauli lazy (MPLS), MPR.

Input is an ordered list of Hermitian signed Pauli strings ``S_l`` over
logical qubits with angles ``θ_l``; the output circuit implements
``exp(i θ_L S_L) ... exp(i θ_1 S_1)`` on the physical qubits of a coupling
graph, each factor as a single-qubit rotation on a CER register.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .arch import CouplingGraph, induced_subgraph, non_cut_nodes, steiner_tree
from .cer import AXES, TO_X, TO_Z, Cer, decompose_raw
from .circuit import Circuit, Gate, Rotation, cancel_adjacent
from .clifford_db import CliffordDb, DatabaseMiss, _rref, load_default_db
from .pauli import (
    FermionMapping,
    PauliString,
    anticommute_raw,
    double_excitation_terms,
    gf2_basis,
    gf2_rank,
)

__all__ = [
    "SynthesisConfig",
    "SynthesisReport",
    "synthesize",
    "steiner_synthesize",
    "lazy_synthesize",
    "select_sublist",
    "mpls_synthesize",
    "mpr_synthesize",
    "compress_general",
    "order_for_cancellation",
    "double_excitation_targets",
]

Angle = Union[float, str]
METHODS = ("ss", "ls", "mpls", "mpr")
RESET_POLICIES = ("at_end", "per_list", "none")
LEAF_CHOICES = ("random", "min_cnot")


@dataclass(frozen=True)
class SynthesisConfig:
    method: str = "mpls"
    k_max: int = 3
    k_prime_max: int = 8
    reset_policy: str = "at_end"
    leaf_choice: str = "random"
    immediate_implement: bool = True
    seed: int = 0
    peephole: bool = True

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if not 1 <= self.k_max <= 4:
            raise ValueError("k_max must lie in 1..4")
        if self.k_prime_max < self.k_max:
            raise ValueError("k_prime_max must be at least k_max")
        if self.reset_policy not in RESET_POLICIES:
            raise ValueError(f"reset_policy must be one of {RESET_POLICIES}")
        if self.leaf_choice not in LEAF_CHOICES:
            raise ValueError(f"leaf_choice must be one of {LEAF_CHOICES}")


@dataclass
class SynthesisReport:
    method: str
    total_cnots: int
    cnots_excluding_final_clifford: int
    depth: int
    positions: list[int]
    wall_time: float = 0.0
    db_misses: int = 0
    stats: dict = field(default_factory=dict)

    def to_dict(self, include_time: bool = False) -> dict:
        out = {
            "method": self.method,
            "total_cnots": self.total_cnots,
            "cnots_excluding_final_clifford": self.cnots_excluding_final_clifford,
            "depth": self.depth,
            "positions": self.positions,
        }
        if include_time:
            out["wall_time"] = self.wall_time
        return out


def _report(method: str, circ: Circuit, n_targets: int, t0: float) -> SynthesisReport:
    positions = [-1] * n_targets
    for pos, op in enumerate(circ.ops):
        if isinstance(op, Rotation) and op.implements is not None:
            positions[op.implements] = pos
    return SynthesisReport(
        method,
        circ.cnot_count(),
        circ.cnot_count_excluding_final_clifford(),
        circ.depth(),
        positions,
        time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# shared state


class _State:
    """CER-tracked circuit under construction."""

    def __init__(self, g: CouplingGraph, targets: Sequence[PauliString], angles: Sequence[Angle]) -> None:
        self.g = g
        self.targets = targets
        self.angles = angles
        self.cer = Cer(g.n_phys)
        self.ops: list = []
        self.done = [False] * len(targets)
        self.cnots = 0
        self.mark = 0  # start of the current implementation phase

    def clone(self) -> _State:
        st = _State.__new__(_State)
        st.g, st.targets, st.angles = self.g, self.targets, self.angles
        st.cer = self.cer.copy()
        st.ops = list(self.ops)
        st.done = list(self.done)
        st.cnots = self.cnots
        st.mark = self.mark
        return st

    def apply(self, gate: Gate) -> None:
        if gate.name == "cx" and not self.g.has_edge(*gate.qubits):
            raise AssertionError(f"cx{gate.qubits} off the coupling graph")
        self.cer.apply(gate)
        self.ops.append(gate)
        if gate.name == "cx":
            self.cnots += 1

    def local(self, word: Sequence[str], q: int) -> None:
        for name in word:
            self.apply(Gate(name, (q,)))

    def rotate(self, l: int, q: int, axis: str) -> None:
        x, z, p = self.cer.register_raw(q, axis)
        t = self.targets[l]
        if (x, z) != (t.x, t.z):
            raise AssertionError(f"register ({q},{axis}) does not hold target {l}")
        sign = 1 if p == t.phase else -1
        self.ops.append(Rotation(axis, q, self.angles[l], sign, l))
        self.done[l] = True

    def axes(self, x: int, z: int) -> dict[int, str]:
        return {q: a for q, a in enumerate(decompose_raw(self.cer, x, z)) if a}

    def target_axes(self, l: int) -> dict[int, str]:
        t = self.targets[l]
        return self.axes(t.x, t.z)

    def registers(self) -> dict[tuple[int, int], tuple[int, str]]:
        out: dict[tuple[int, int], tuple[int, str]] = {}
        for q in range(self.cer.n):
            for axis in AXES:
                x, z, _ = self.cer.register_raw(q, axis)
                out.setdefault((x, z), (q, axis))
        return out

    def blocked(self, l: int, active: Sequence[int]) -> bool:
        t = self.targets[l]
        for i in active:
            if i == l:
                return False
            if not self.done[i] and anticommute_raw(self.targets[i].x, self.targets[i].z, t.x, t.z):
                return True
        return False

    def implement_ready(self, active: Sequence[int]) -> int:
        """Rotate every active target that sits in a register and is not blocked."""
        regs = None
        count = 0
        for l in active:
            if self.done[l] or self.blocked(l, active):
                continue
            if regs is None:
                regs = self.registers()
            hit = regs.get((self.targets[l].x, self.targets[l].z))
            if hit is not None:
                self.rotate(l, *hit)
                count += 1
        return count

    def circuit(self) -> Circuit:
        return Circuit(self.g.n_phys, list(self.ops))


def _tree_order(edges, root: int) -> tuple[list[int], dict[int, int]]:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    order, parent = [root], {}
    seen = {root}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in sorted(adj.get(u, ())):
            if w not in seen:
                seen.add(w)
                parent[w] = u
                order.append(w)
    return order, parent


def _fold(st: _State, axes: dict[int, str], graph: CouplingGraph, root: int, to: str = "Z") -> list[Gate]:
    """Localize the product of ``axes`` registers onto ``(root, to)``; returns the gates used.

    Z variant: basis changes into Z, then CNOT(steiner, child) to seed
    Steiner nodes and CNOT(child, parent) to fold.  X variant mirrors the
    directions and never uses ``root`` as a CNOT target, so its Z register
    is left untouched.
    """
    start = len(st.ops)
    words = TO_Z if to == "Z" else TO_X
    for q in sorted(axes):
        st.local(words[axes[q]], q)
    terminals = set(axes) | {root}
    tree = steiner_tree(graph, terminals)
    order, parent = _tree_order(tree.tree_edges, root)
    children: dict[int, list[int]] = {}
    for v in order[1:]:
        children.setdefault(parent[v], []).append(v)
    for v in reversed(order):
        if v not in axes:
            c = children[v][0]
            st.apply(Gate("cx", (v, c) if to == "Z" else (c, v)))
    for v in reversed(order[1:]):
        p = parent[v]
        st.apply(Gate("cx", (v, p) if to == "Z" else (p, v)))
    return st.ops[start:]


def _lazy_one(st: _State, l: int, graph: CouplingGraph) -> None:
    axes = st.target_axes(l)
    if len(axes) == 1:
        (q, a), = axes.items()
        st.rotate(l, q, a)
        return
    root = min(axes)
    _fold(st, axes, graph, root)
    st.rotate(l, root, "Z")


def _embed(targets: Sequence[PauliString], g: CouplingGraph, layout: Sequence[int] | None) -> list[PauliString]:
    if not targets:
        return []
    n = targets[0].n
    if layout is None:
        layout = list(range(n))
    if len(layout) != n or len(set(layout)) != n:
        raise ValueError("layout must map every logical qubit to a distinct node")
    for v in layout:
        if v not in g.nodes:
            raise ValueError(f"layout node {v} not in graph")
    out = []
    for t in targets:
        if t.n != n:
            raise ValueError("targets over different qubit counts")
        if not t.is_hermitian:
            raise ValueError(f"target {t} is not Hermitian")
        out.append(t.embed(g.n_phys, layout))
    return out


def _check_inputs(targets, angles, g: CouplingGraph) -> None:
    if len(targets) != len(angles):
        raise ValueError("one angle per target")
    if not g.is_connected:
        raise ValueError("coupling graph must be connected")


def _finish(method: str, st: _State, cfg: SynthesisConfig, t0: float, n_targets: int):
    circ = st.circuit()
    if cfg.peephole:
        circ = cancel_adjacent(circ)
    return circ, _report(method, circ, n_targets, t0)


# ---------------------------------------------------------------------------
# Steiner synthesis


def _ss_block(st: _State, l: int) -> None:
    axes = st.target_axes(l)
    if not axes:
        st.done[l] = True  # global phase
        return
    if len(axes) == 1:
        (q, a), = axes.items()
        st.rotate(l, q, a)
        return
    root = min(axes)
    gates = _fold(st, axes, st.g, root)
    st.rotate(l, root, "Z")
    for gate in reversed(gates):
        st.apply(gate.inverse())


def steiner_synthesize(
    targets: Sequence[PauliString],
    angles: Sequence[Angle],
    g: CouplingGraph,
    layout: Sequence[int] | None = None,
    cfg: SynthesisConfig | None = None,
) -> tuple[Circuit, SynthesisReport]:
    """Each target in turn: basis change, Steiner fold, rotation, exact unfold."""
    cfg = cfg or SynthesisConfig(method="ss")
    _check_inputs(targets, angles, g)
    t0 = time.perf_counter()
    phys = _embed(targets, g, layout)
    st = _State(g, phys, angles)
    for l in range(len(phys)):
        _ss_block(st, l)
    return _finish("ss", st, cfg, t0, len(phys))


def order_for_cancellation(
    terms: Sequence[PauliString], g: CouplingGraph, layout: Sequence[int] | None = None
) -> list[int]:
    """Order commuting terms so consecutive Steiner blocks cancel the most CNOTs.

    Distance from ``a`` to ``b`` is the number of CNOTs appending ``b``'s
    block adds after peephole cancellation.  A greedy nearest-neighbour path
    is grown from every start (ties to the lowest index); the cheapest full
    path wins, with the identity order as a fallback candidate.
    """
    m = len(terms)
    if m <= 1:
        return list(range(m))
    for a in range(m):
        for b in range(a + 1, m):
            if anticommute_raw(terms[a].x, terms[a].z, terms[b].x, terms[b].z):
                raise ValueError("order_for_cancellation needs mutually commuting terms")
    phys = _embed(terms, g, layout)
    blocks = []
    for l in range(m):
        st = _State(g, phys, [0.0] * m)
        _ss_block(st, l)
        blocks.append(st.ops)
    solo = [sum(1 for op in b if isinstance(op, Gate) and op.name == "cx") for b in blocks]

    def pair_cost(a: int, b: int) -> int:
        return cancel_adjacent(Circuit(g.n_phys, blocks[a] + blocks[b])).cnot_count() - solo[a]

    dist = [[pair_cost(a, b) if a != b else 0 for b in range(m)] for a in range(m)]

    def total(order: list[int]) -> int:
        ops = [op for l in order for op in blocks[l]]
        return cancel_adjacent(Circuit(g.n_phys, ops)).cnot_count()

    best_order = list(range(m))
    best = total(best_order)
    for start in range(m):
        order = [start]
        left = set(range(m)) - {start}
        while left:
            cur = order[-1]
            nxt = min(left, key=lambda b: (dist[cur][b], b))
            order.append(nxt)
            left.remove(nxt)
        cost = total(order)
        if cost < best:
            best, best_order = cost, order
    return best_order


# ---------------------------------------------------------------------------
# lazy synthesis and resetting


def _cx(gates) -> int:
    return sum(1 for g in gates if g.name == "cx")


def _reset(st: _State, since: int, variant: str, db: CliffordDb | None) -> None:
    """Append a Clifford undoing every gate in ``st.ops[since:]`` (CER at ``since`` is the identity).

    Candidates, cheapest CNOT count wins (earlier on ties): the plain
    inverse; a fresh ordered synthesis of the whole reset; a resynthesis of
    the implementation phase followed by the inverse of the compression phase.
    """
    from .clifford_synth import reset_circuit

    gates = [op for op in st.ops[since:] if isinstance(op, Gate)]
    cands = [[g.inverse() for g in reversed(gates)]]
    try:
        cands.append(reset_circuit(st.cer, st.g, variant=variant, db=db)[0])
    except DatabaseMiss:
        pass
    if since < st.mark < len(st.ops):
        first = [op for op in st.ops[since : st.mark] if isinstance(op, Gate)]
        second = [op for op in st.ops[st.mark :] if isinstance(op, Gate)]
        if _cx(second) > 1:
            part = Cer(st.g.n_phys).apply_all(second)
            try:
                alt = reset_circuit(part, st.g, variant=variant, db=db)[0]
                cands.append(alt + [g.inverse() for g in reversed(first)])
            except DatabaseMiss:
                pass
    best = min(cands, key=_cx)
    for gate in best:
        st.apply(gate)
    if not st.cer.is_identity():
        raise AssertionError("reset did not restore the identity CER")


def lazy_synthesize(
    targets: Sequence[PauliString],
    angles: Sequence[Angle],
    g: CouplingGraph,
    layout: Sequence[int] | None = None,
    cfg: SynthesisConfig | None = None,
    db: CliffordDb | None = None,
) -> tuple[Circuit, SynthesisReport]:
    """Fold each target into one register against the running CER; no uncompute."""
    cfg = cfg or SynthesisConfig(method="ls")
    _check_inputs(targets, angles, g)
    t0 = time.perf_counter()
    phys = _embed(targets, g, layout)
    st = _State(g, phys, angles)
    for l in range(len(phys)):
        if not phys[l].x and not phys[l].z:
            st.done[l] = True
            continue
        _lazy_one(st, l, g)
    if cfg.reset_policy != "none":
        _reset(st, 0, "paulipair", db)
    return _finish("ls", st, cfg, t0, len(phys))


# ---------------------------------------------------------------------------
# MPLS


def select_sublist(targets: Sequence[PauliString], k: int, k_prime: int) -> tuple[list[int], list[int]]:
    """Longest prefix with at most ``k_prime`` entries and GF(2) rank at most ``k``.

    Returns the prefix indices and the generator subset (first occurrence of
    each independent row).
    """
    if k < 1:
        raise ValueError("k must be positive")
    chosen: list[int] = []
    for i in range(min(len(targets), k_prime)):
        if gf2_rank([targets[j] for j in chosen + [i]]) > k:
            break
        chosen.append(i)
    gens = gf2_basis([targets[i] for i in chosen]) if chosen else []
    return chosen, [chosen[i] for i in gens]


def _local_mask(axes: dict[int, str], nodes: Sequence[int]) -> tuple[int, int]:
    x = z = 0
    for i, v in enumerate(nodes):
        a = axes.get(v, "")
        if a in ("X", "Y"):
            x |= 1 << i
        if a in ("Z", "Y"):
            z |= 1 << i
    return x, z


def _span_basis(masks: Sequence[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    full = (1 << n) - 1
    vecs = _rref(x | (z << n) for x, z in masks)
    return [(v & full, v >> n) for v in vecs]


def _window(graph: CouplingGraph, r: int, masks_of) -> tuple[list[int], list[tuple[int, int]]] | None:
    """Removal window: ``r`` plus BFS-nearest nodes of the rest, sized by the local rank."""
    rest = graph.nodes - {r}
    nbrs = [w for w in graph.neighbors(r) if w in rest]
    if not nbrs:
        return None
    dist = graph.bfs(min(nbrs), frozenset(rest))
    order = [r] + sorted(dist, key=lambda v: (dist[v], v))
    basis: list[tuple[int, int]] = []
    for size in range(2, min(5, len(order)) + 1):
        nodes = order[:size]
        basis = _span_basis([m for m in masks_of(nodes) if m != (0, 0)], size)
        if size - 1 >= len(basis) and len(basis) <= 4:
            return nodes, basis
    if len(basis) <= 4:
        return order[: min(5, len(order))], basis
    return None


def _compress_step(st: _State, graph: CouplingGraph, r: int, axes_list, db: CliffordDb):
    """Database compression removing ``r`` from every decomposition; ``None`` on a miss."""
    win = _window(graph, r, lambda nodes: [_local_mask(a, nodes) for a in axes_list])
    if win is None:
        return None
    nodes, basis = win
    if not basis:
        return ()
    edges = [e for e in st.g.edges if e[0] in nodes and e[1] in nodes]
    try:
        res = db.lookup("compress", nodes, edges, basis, 0)
    except DatabaseMiss:
        return None
    return res


def _prune(graph: CouplingGraph, support: set[int]) -> CouplingGraph:
    while True:
        extra = [v for v in sorted(non_cut_nodes(graph)) if v not in support]
        if not extra or len(graph.nodes) <= 1:
            return graph
        graph = induced_subgraph(graph, graph.nodes - {extra[0]})


def _mpls_block(st: _State, active: list[int], cfg: SynthesisConfig, db: CliffordDb, rng) -> None:
    """Compression then implementation of the ``active`` targets (in place)."""
    k = cfg.k_max
    immediate = cfg.immediate_implement
    if immediate:
        st.implement_ready(active)
    undone = [l for l in active if not st.done[l]]
    if not undone:
        return
    axes = {l: st.target_axes(l) for l in undone}
    support = set().union(*(a.keys() for a in axes.values()))
    area = induced_subgraph(st.g, steiner_tree(st.g, support).nodes)
    fallback = False
    while len(area.nodes) > k:
        undone = [l for l in active if not st.done[l]]
        if not undone:
            return
        axes = {l: st.target_axes(l) for l in undone}
        support = set().union(*(a.keys() for a in axes.values()))
        area = _prune(area, support)
        if len(area.nodes) <= k:
            break
        cands = sorted(non_cut_nodes(area) & support)
        if cfg.leaf_choice == "min_cnot":
            priced = []
            for r in cands:
                res = _compress_step(st, area, r, list(axes.values()), db)
                if res is not None:
                    priced.append((sum(g.name == "cx" for g in (res.gates if res else ())), r, res))
            if not priced:
                fallback = True
                break
            _, r, res = min(priced, key=lambda t: (t[0], t[1]))
        else:
            order = list(cands)
            rng.shuffle(order)
            res = None
            for r in order:
                res = _compress_step(st, area, r, list(axes.values()), db)
                if res is not None:
                    break
            if res is None:
                fallback = True
                break
        for gate in (res.gates if res else ()):
            st.apply(gate)
            if immediate and gate.name == "cx":
                st.implement_ready(active)
        area = induced_subgraph(area, area.nodes - {r})
    st.mark = len(st.ops)
    # implementation in batches of three
    while not fallback:
        undone = [l for l in active if not st.done[l]]
        if not undone:
            return
        if st.implement_ready(active):
            continue
        batch = undone[:3]
        nodes = sorted(area.nodes)
        masks = []
        for l in batch:
            a = st.target_axes(l)
            if not set(a) <= area.nodes:
                raise AssertionError("target escaped the compressed area")
            masks.append(_local_mask(a, nodes))
        try:
            res = db.lookup("implement", nodes, area.edges, masks)
        except DatabaseMiss:
            break
        for gate in res.gates:
            st.apply(gate)
            st.implement_ready(active)
        if not all(st.done[l] for l in batch):
            raise AssertionError("implementation entry did not implement its batch")
    for l in active:
        if not st.done[l]:
            _lazy_one(st, l, area)


def mpls_synthesize(
    targets: Sequence[PauliString],
    angles: Sequence[Angle],
    g: CouplingGraph,
    layout: Sequence[int] | None = None,
    cfg: SynthesisConfig | None = None,
    db: CliffordDb | None = None,
) -> tuple[Circuit, SynthesisReport]:
    """Multi-Pauli lazy synthesis.

    Each round selects a low-rank prefix of the remaining targets, tries
    every prefix length ``i`` on a cloned state and commits the one with the
    fewest CNOTs per implemented target (ties toward larger ``i``).
    """
    cfg = cfg or SynthesisConfig()
    _check_inputs(targets, angles, g)
    db = db if db is not None else load_default_db()
    t0 = time.perf_counter()
    misses0 = db.misses
    phys = _embed(targets, g, layout)
    st = _State(g, phys, angles)
    for l, t in enumerate(phys):
        if not t.x and not t.z:
            st.done[l] = True
    rnd = 0
    while not all(st.done):
        remaining = [l for l in range(len(phys)) if not st.done[l]]
        prefix, _ = select_sublist([phys[l] for l in remaining], cfg.k_max, cfg.k_prime_max)
        sub = [remaining[i] for i in prefix]
        round_start = len(st.ops)
        best = None
        for i in range(1, len(sub) + 1):
            trial = st.clone()
            rng = np.random.default_rng([cfg.seed, rnd, i])
            _mpls_block(trial, sub[:i], cfg, db, rng)
            if cfg.reset_policy == "per_list":
                _reset(trial, round_start, "mpcs", db)
            cost = (trial.cnots - st.cnots) / i
            if best is None or cost <= best[0]:
                best = (cost, trial)
        st = best[1]
        rnd += 1
    if cfg.reset_policy == "at_end":
        _reset(st, 0, "mpcs", db)
    circ, rep = _finish(cfg.method, st, cfg, t0, len(phys))
    rep.db_misses = db.misses - misses0
    rep.stats["rounds"] = rnd
    return circ, rep


# ---------------------------------------------------------------------------
# MPR


def double_excitation_targets(
    mapping: FermionMapping, modes: tuple[int, int, int, int], theta: float
) -> tuple[list[PauliString], list[float]]:
    """Eight commuting targets and angles whose product is ``exp(θ (a_i^† a_j^† a_k a_l - h.c.))``."""
    terms = double_excitation_terms(mapping, *modes)
    return [t for t, _ in terms], [theta * s / 8.0 for _, s in terms]


def mpr_synthesize(
    excitation: tuple[int, int, int, int] | None = None,
    mapping: FermionMapping | None = None,
    g: CouplingGraph | None = None,
    layout: Sequence[int] | None = None,
    theta: float = 0.1,
    cfg: SynthesisConfig | None = None,
    db: CliffordDb | None = None,
    targets: Sequence[PauliString] | None = None,
    angles: Sequence[Angle] | None = None,
) -> tuple[Circuit, SynthesisReport]:
    """Multi-Pauli resetted synthesis.

    Either a double excitation (``excitation`` + ``mapping``) or an explicit
    target list.  Every round compresses its generators into at most four
    qubits, implements the round, undoes the implementation Clifford (cheaper
    of inverse and resynthesis) and then the compression Clifford, so the
    CER is the identity between rounds.
    """
    if g is None:
        raise ValueError("a coupling graph is required")
    if targets is None:
        if excitation is None or mapping is None:
            raise ValueError("need an excitation and mapping, or explicit targets")
        targets, angles = double_excitation_targets(mapping, excitation, theta)
    base = cfg or SynthesisConfig(method="mpr")
    cfg = SynthesisConfig(
        method="mpr",
        k_max=4,
        k_prime_max=max(8, base.k_prime_max),
        reset_policy="per_list",
        leaf_choice=base.leaf_choice,
        immediate_implement=base.immediate_implement,
        seed=base.seed,
        peephole=base.peephole,
    )
    return mpls_synthesize(targets, angles, g, layout, cfg, db)


# ---------------------------------------------------------------------------
# general compression


def compress_general(
    paulis: Sequence[PauliString], g: CouplingGraph, dest: Sequence[int], initial: Cer | None = None
) -> Circuit:
    """Clifford circuit after which every Pauli decomposes over ``dest`` registers only.

    Constructive induction: with ``P_1..P_{m-1}`` already living on
    ``q_1..q_{m-1}``, the part of ``P_m`` outside those qubits is folded into
    ``q_m`` using only the remaining nodes, which leaves earlier Paulis and
    the already-local part of ``P_m`` untouched.
    """
    m = len(paulis)
    n = g.n_phys
    dest = list(dest)
    if m != len(dest) or len(set(dest)) != m:
        raise ValueError("need one distinct destination qubit per Pauli")
    if m >= len(g.nodes):
        raise ValueError("compression needs fewer Paulis than qubits")
    if not induced_subgraph(g, dest).is_connected:
        raise ValueError("destination qubits must be connected")
    if any(p.n != n for p in paulis):
        raise ValueError("Paulis must live on the physical qubits")
    st = _State(g, list(paulis), [0.0] * m)
    if initial is not None:
        st.cer = initial.copy()
    # destination order keeping the rest connected
    order: list[int] = []
    graph = g
    left = set(dest)
    while left:
        # the last destination is never removed, so it may be a cut node
        ok = sorted(left) if len(left) == 1 else sorted(v for v in non_cut_nodes(graph) if v in left)
        if not ok:
            raise ValueError("destination set would disconnect the graph")
        q = ok[0]
        order.append(q)
        left.discard(q)
        graph = induced_subgraph(graph, graph.nodes - {q})
    fixed: set[int] = set()
    graph = g
    for p, q in zip(paulis, order):
        axes = {v: a for v, a in st.axes(p.x, p.z).items() if v not in fixed}
        if axes and set(axes) != {q}:
            _fold(st, axes, graph, q)
        fixed.add(q)
        graph = induced_subgraph(graph, graph.nodes - {q})
    return st.circuit()


# ---------------------------------------------------------------------------
# dispatcher


def synthesize(
    targets: Sequence[PauliString],
    angles: Sequence[Angle],
    g: CouplingGraph,
    layout: Sequence[int] | None = None,
    cfg: SynthesisConfig | None = None,
    db: CliffordDb | None = None,
) -> tuple[Circuit, SynthesisReport]:
    cfg = cfg or SynthesisConfig()
    if cfg.method == "ss":
        return steiner_synthesize(targets, angles, g, layout, cfg)
    if cfg.method == "ls":
        return lazy_synthesize(targets, angles, g, layout, cfg, db)
    if cfg.method == "mpr":
        return mpr_synthesize(g=g, layout=layout, cfg=cfg, db=db, targets=targets, angles=angles)
    return mpls_synthesize(targets, angles, g, layout, cfg, db)

"""Coupling graphs, standard topologies, Mehlhorn Steiner trees and cut vertices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

__all__ = [
    "CouplingGraph",
    "SteinerResult",
    "DisconnectedGraphError",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "complete_graph",
    "heavy_hex",
    "steiner_tree",
    "induced_subgraph",
    "non_cut_nodes",
    "bfs_layout",
    "parse_arch",
    "load_graph",
]


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected simple graph; ``nodes`` may be a subset of ``range(n_phys)``."""

    n_phys: int
    edges: frozenset[tuple[int, int]]
    nodes: frozenset[int] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.nodes is None:
            object.__setattr__(self, "nodes", frozenset(range(self.n_phys)))
        else:
            object.__setattr__(self, "nodes", frozenset(self.nodes))
        for u, v in norm:
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge {(u, v)} leaves the node set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> CouplingGraph:
        return cls(n, frozenset(edges))

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def bfs(self, source: int, allowed: frozenset[int] | None = None) -> dict[int, int]:
        allowed = self.nodes if allowed is None else allowed
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w in allowed and w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @cached_property
    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        return len(self.bfs(min(self.nodes))) == len(self.nodes)

    def distance(self, u: int, v: int) -> int:
        return self._distances[u][v]

    @cached_property
    def _distances(self) -> dict[int, dict[int, int]]:
        return {v: self.bfs(v) for v in self.nodes}

    def diameter(self) -> int:
        return max((max(d.values()) for d in self._distances.values()), default=0)

    def to_text(self) -> str:
        lines = [f"n {self.n_phys}"]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SteinerResult:
    nodes: frozenset[int]
    tree_edges: frozenset[tuple[int, int]]
    terminals: frozenset[int]


def path_graph(n: int) -> CouplingGraph:
    if n < 1:
        raise ValueError("path needs at least one node")
    return CouplingGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> CouplingGraph:
    return CouplingGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> CouplingGraph:
    return CouplingGraph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> CouplingGraph:
    return CouplingGraph(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)))


def heavy_hex(d: int) -> CouplingGraph:
    """Heavy-hexagon lattice with ``d`` hexagon rows in the IBM Eagle numbering.

    ``d + 1`` long rows of ``2d + 3`` qubits are joined by bridge qubits every
    fourth column, alternating offsets 0 and 2; the first row drops its last
    qubit and the last row its first.  ``heavy_hex(6)`` is the 127-qubit
    Eagle layout.
    """
    if d < 2:
        raise ValueError("heavy_hex needs d >= 2 hexagon rows")
    width = 2 * d + 3
    edges = []
    rows: list[dict[int, int]] = []
    bridges: list[dict[int, int]] = []
    nxt = 0
    for r in range(d + 1):
        lo = 1 if r == d else 0
        hi = width - 1 if r == 0 else width
        ids = {}
        for c in range(lo, hi):
            ids[c] = nxt
            nxt += 1
            if c > lo:
                edges.append((ids[c - 1], ids[c]))
        rows.append(ids)
        if r < d:
            # bridge qubits are numbered right after the row above them
            bs = {}
            for c in range(0 if r % 2 == 0 else 2, width, 4):
                bs[c] = nxt
                nxt += 1
            bridges.append(bs)
    for r, bs in enumerate(bridges):
        for c, b in bs.items():
            if c in rows[r]:
                edges.append((rows[r][c], b))
            if c in rows[r + 1]:
                edges.append((b, rows[r + 1][c]))
    g = CouplingGraph(nxt, frozenset(edges))
    if not g.is_connected:  # pragma: no cover - construction invariant
        raise AssertionError("heavy-hex construction disconnected")
    return g


def _assert_terminals(g: CouplingGraph, terminals: Iterable[int]) -> list[int]:
    ts = sorted(set(terminals))
    if not ts:
        raise ValueError("Steiner tree needs at least one terminal")
    for t in ts:
        if t not in g.nodes:
            raise ValueError(f"terminal {t} not in graph")
    return ts


def steiner_tree(g: CouplingGraph, terminals: Iterable[int]) -> SteinerResult:
    """Mehlhorn's 2-approximate Steiner tree with unit edge weights.

    Voronoi regions come from a layered multi-source BFS; every tie is
    broken toward the lowest node id, so the tree is deterministic.
    """
    ts = _assert_terminals(g, terminals)
    if len(ts) == 1:
        return SteinerResult(frozenset(ts), frozenset(), frozenset(ts))
    adj = g.adjacency
    # Voronoi partition: dist, source terminal, predecessor toward source
    dist = {t: 0 for t in ts}
    src = {t: t for t in ts}
    pred: dict[int, int] = {}
    layer = ts
    while layer:
        cand: dict[int, tuple[int, int]] = {}
        for u in layer:
            for w in adj[u]:
                if w in dist:
                    continue
                key = (src[u], u)
                if w not in cand or key < cand[w]:
                    cand[w] = key
        layer = sorted(cand)
        for w in layer:
            s, u = cand[w]
            dist[w] = dist[u] + 1
            src[w] = s
            pred[w] = u
    # cheapest bridging edge per pair of Voronoi regions
    bridge: dict[tuple[int, int], tuple[int, tuple[int, int]]] = {}
    for u, v in sorted(g.edges):
        if u not in dist or v not in dist:
            continue
        a, b = src[u], src[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        w = dist[u] + 1 + dist[v]
        if key not in bridge or (w, (u, v)) < bridge[key]:
            bridge[key] = (w, (u, v))
    # Kruskal over the terminal distance graph
    parent = {t: t for t in ts}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    chosen = []
    for key, (w, e) in sorted(bridge.items(), key=lambda kv: (kv[1][0], kv[0], kv[1][1])):
        ra, rb = find(key[0]), find(key[1])
        if ra != rb:
            parent[ra] = rb
            chosen.append(e)
    if len({find(t) for t in ts}) != 1:
        raise DisconnectedGraphError("terminals are not mutually reachable")
    # expand to graph paths
    sub_edges = set()
    for u, v in chosen:
        sub_edges.add((min(u, v), max(u, v)))
        for end in (u, v):
            while end in pred:
                p = pred[end]
                sub_edges.add((min(p, end), max(p, end)))
                end = p
    # spanning tree of the expanded subgraph, then prune non-terminal leaves
    sub_adj: dict[int, list[int]] = {}
    for u, v in sub_edges:
        sub_adj.setdefault(u, []).append(v)
        sub_adj.setdefault(v, []).append(u)
    root = ts[0]
    seen = {root}
    tree: dict[int, set[int]] = {root: set()}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(sub_adj.get(u, ())):
            if w not in seen:
                seen.add(w)
                tree.setdefault(u, set()).add(w)
                tree.setdefault(w, set()).add(u)
                queue.append(w)
    terminal_set = set(ts)
    leaves = [v for v, ns in tree.items() if len(ns) <= 1 and v not in terminal_set]
    while leaves:
        v = leaves.pop()
        for w in tree.pop(v):
            tree[w].discard(v)
            if len(tree[w]) <= 1 and w not in terminal_set:
                leaves.append(w)
    edges = frozenset((min(u, w), max(u, w)) for u, ns in tree.items() for w in ns)
    return SteinerResult(frozenset(tree), edges, frozenset(ts))


def _reachable_all(g: CouplingGraph, ts: list[int]) -> bool:
    reach = g.bfs(ts[0])
    return all(t in reach for t in ts)


def induced_subgraph(g: CouplingGraph, nodes: Iterable[int]) -> CouplingGraph:
    ns = frozenset(nodes)
    for v in ns:
        if v not in g.nodes:
            raise ValueError(f"node {v} not in graph")
    return CouplingGraph(g.n_phys, frozenset(e for e in g.edges if e[0] in ns and e[1] in ns), ns)


def non_cut_nodes(g: CouplingGraph) -> frozenset[int]:
    """Nodes whose removal leaves the graph connected (complement of articulation points)."""
    if not g.nodes:
        return frozenset()
    adj = g.adjacency
    root = min(g.nodes)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut = set()
    timer = 0
    root_children = 0
    disc[root] = low[root] = timer
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w in disc:
                low[u] = min(low[u], disc[w])
            else:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[u])
            if parent == root:
                root_children += 1
            elif low[u] >= disc[parent]:
                cut.add(parent)
    if root_children > 1:
        cut.add(root)
    return frozenset(v for v in g.nodes if v not in cut)


def bfs_layout(g: CouplingGraph, n_logical: int) -> list[int]:
    """Logical qubit ``i`` -> ``i``-th node of a BFS from the most central node.

    The centre is the node of minimum eccentricity (lowest id on ties); BFS
    visits neighbours in increasing id order.
    """
    if n_logical > len(g.nodes):
        raise ValueError("more logical qubits than physical nodes")
    ecc = {v: max(d.values()) for v, d in g._distances.items()}
    centre = min(g.nodes, key=lambda v: (ecc[v], v))
    order = [centre]
    seen = {centre}
    queue = deque([centre])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order[:n_logical]


def load_graph(path: str | Path) -> CouplingGraph:
    n = None
    edges = []
    for raw in Path(path).read_text().splitlines():
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        a, b = s.split()
        if a == "n":
            n = int(b)
        else:
            edges.append((int(a), int(b)))
    if n is None:
        raise ValueError("graph file lacks 'n <count>' header")
    return CouplingGraph(n, frozenset(edges))


def parse_arch(spec: str) -> CouplingGraph:
    """``path:<n>``, ``heavyhex:<d>`` or ``file:<path>``."""
    kind, _, arg = spec.partition(":")
    if kind == "path":
        return path_graph(int(arg))
    if kind == "heavyhex":
        return heavy_hex(int(arg))
    if kind == "file":
        return load_graph(arg)
    raise ValueError(f"unknown architecture spec {spec!r}")

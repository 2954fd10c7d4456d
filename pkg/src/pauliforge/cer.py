"""Clifford Executive Representation (CER).

For a Clifford circuit ``C`` applied so far, register ``(q, P)`` holds the
Pauli string ``C^† P_q C``: a ``P`` rotation on qubit ``q`` placed at this
point (and undone by the rest of the circuit) implements
``exp(i θ CER[q, P])``.  Only the Z and X registers are stored; the Y
register is ``-i * z_q * x_q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .circuit import Circuit, Gate, Rotation
from .pauli import PauliString, anticommute_raw, mul_raw

__all__ = [
    "Cer",
    "Decomposition",
    "identity_cer",
    "apply_gate",
    "from_circuit",
    "y_register",
    "decompose",
    "support",
    "find_implemented",
    "distinct_pauli_count",
    "cer_trace",
    "single_qubit_cliffords",
    "AXES",
    "TO_Z",
    "TO_X",
]

AXES = ("Z", "X", "Y")

# one-qubit gate words moving the content of an axis register into Z (or X)
TO_Z = {"Z": (), "X": ("h",), "Y": ("sdg", "h")}
TO_X = {"X": (), "Z": ("h",), "Y": ("s",)}


class Cer:
    """Mutable-in-place CER over ``n`` qubits; :func:`apply_gate` gives value semantics."""

    __slots__ = ("n", "zx", "zz", "zp", "xx", "xz", "xp")

    def __init__(self, n: int, rows: tuple | None = None) -> None:
        if n < 1:
            raise ValueError("CER needs at least one qubit")
        self.n = n
        if rows is None:
            self.zx = [0] * n
            self.zz = [1 << q for q in range(n)]
            self.zp = [0] * n
            self.xx = [1 << q for q in range(n)]
            self.xz = [0] * n
            self.xp = [0] * n
        else:
            self.zx, self.zz, self.zp, self.xx, self.xz, self.xp = (list(r) for r in rows)

    @classmethod
    def from_rows(cls, z_rows: Sequence[PauliString], x_rows: Sequence[PauliString]) -> Cer:
        n = len(z_rows)
        if len(x_rows) != n or any(p.n != n for p in (*z_rows, *x_rows)):
            raise ValueError("need n Z rows and n X rows over n qubits")
        for p in (*z_rows, *x_rows):
            if not p.is_hermitian:
                raise ValueError(f"register {p} is not Hermitian")
        cer = cls(
            n,
            (
                [p.x for p in z_rows], [p.z for p in z_rows], [p.phase for p in z_rows],
                [p.x for p in x_rows], [p.z for p in x_rows], [p.phase for p in x_rows],
            ),
        )
        if not cer.is_valid():
            raise ValueError("rows do not form a stabilizer/destabilizer frame")
        return cer

    def copy(self) -> Cer:
        return Cer(self.n, (self.zx, self.zz, self.zp, self.xx, self.xz, self.xp))

    # register access -------------------------------------------------------
    def z_raw(self, q: int) -> tuple[int, int, int]:
        return self.zx[q], self.zz[q], self.zp[q]

    def x_raw(self, q: int) -> tuple[int, int, int]:
        return self.xx[q], self.xz[q], self.xp[q]

    def y_raw(self, q: int) -> tuple[int, int, int]:
        x, z, p = mul_raw(self.zx[q], self.zz[q], self.zp[q], self.xx[q], self.xz[q], self.xp[q])
        return x, z, (p - 1) & 3

    def register_raw(self, q: int, axis: str) -> tuple[int, int, int]:
        if axis == "Z":
            return self.z_raw(q)
        if axis == "X":
            return self.x_raw(q)
        return self.y_raw(q)

    def register(self, q: int, axis: str) -> PauliString:
        return PauliString(self.n, *self.register_raw(q, axis))

    @property
    def z_rows(self) -> tuple[PauliString, ...]:
        return tuple(PauliString(self.n, *self.z_raw(q)) for q in range(self.n))

    @property
    def x_rows(self) -> tuple[PauliString, ...]:
        return tuple(PauliString(self.n, *self.x_raw(q)) for q in range(self.n))

    # gate updates ----------------------------------------------------------
    def apply(self, gate: Gate) -> Cer:
        name, qs = gate.name, gate.qubits
        for q in qs:
            if not 0 <= q < self.n:
                raise IndexError(f"qubit {q} out of range for n={self.n}")
        q = qs[0]
        if name == "cx":
            c, t = qs
            self.zx[t], self.zz[t], self.zp[t] = mul_raw(
                self.zx[t], self.zz[t], self.zp[t], self.zx[c], self.zz[c], self.zp[c]
            )
            self.xx[c], self.xz[c], self.xp[c] = mul_raw(
                self.xx[c], self.xz[c], self.xp[c], self.xx[t], self.xz[t], self.xp[t]
            )
        elif name == "h":
            self.zx[q], self.xx[q] = self.xx[q], self.zx[q]
            self.zz[q], self.xz[q] = self.xz[q], self.zz[q]
            self.zp[q], self.xp[q] = self.xp[q], self.zp[q]
        elif name == "s":
            x, z, p = self.y_raw(q)
            self.xx[q], self.xz[q], self.xp[q] = x, z, p ^ 2
        elif name == "sdg":
            self.xx[q], self.xz[q], self.xp[q] = self.y_raw(q)
        elif name == "x":
            self.zp[q] ^= 2
        elif name == "z":
            self.xp[q] ^= 2
        elif name == "y":
            self.zp[q] ^= 2
            self.xp[q] ^= 2
        else:  # pragma: no cover - Gate validates names
            raise ValueError(name)
        return self

    def apply_all(self, gates: Iterable[Gate]) -> Cer:
        for g in gates:
            self.apply(g)
        return self

    # checks ----------------------------------------------------------------
    def is_valid(self) -> bool:
        rows = [(self.zx[q], self.zz[q], self.zp[q]) for q in range(self.n)] + [
            (self.xx[q], self.xz[q], self.xp[q]) for q in range(self.n)
        ]
        if any(p not in (0, 2) for _, _, p in rows):
            return False
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                anti = anticommute_raw(rows[i][0], rows[i][1], rows[j][0], rows[j][1])
                if anti != (j == i + n):
                    return False
        return True

    def is_identity(self) -> bool:
        return self == Cer(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cer):
            return NotImplemented
        return (
            self.n == other.n
            and self.zx == other.zx and self.zz == other.zz and self.zp == other.zp
            and self.xx == other.xx and self.xz == other.xz and self.xp == other.xp
        )

    def __hash__(self) -> int:  # pragma: no cover - mutable, hash by content snapshot
        return hash((tuple(self.zx), tuple(self.zz), tuple(self.zp), tuple(self.xx), tuple(self.xz), tuple(self.xp)))

    def dump(self) -> str:
        lines = []
        for q in range(self.n):
            lines.append(
                f"{q} | Z: {self.register(q, 'Z')} | X: {self.register(q, 'X')} | Y: {self.register(q, 'Y')}"
            )
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"Cer(n={self.n})\n{self.dump()}"


def identity_cer(n: int) -> Cer:
    return Cer(n)


def apply_gate(cer: Cer, gate: Gate) -> Cer:
    return cer.copy().apply(gate)


def from_circuit(circuit: Circuit, n: int | None = None) -> Cer:
    cer = Cer(circuit.n if n is None else n)
    for op in circuit.ops:
        if isinstance(op, Rotation):
            raise ValueError("from_circuit expects a Clifford-only circuit")
        cer.apply(op)
    return cer


def y_register(cer: Cer, q: int) -> PauliString:
    return cer.register(q, "Y")


def cer_trace(circuit: Circuit) -> list[Cer]:
    """CER before the first op and after every Clifford gate (rotations skipped)."""
    cer = Cer(circuit.n)
    out = [cer.copy()]
    for op in circuit.ops:
        if isinstance(op, Gate):
            cer.apply(op)
            out.append(cer.copy())
    return out


def distinct_pauli_count(trace: Iterable[Cer]) -> int:
    seen = set()
    for cer in trace:
        for q in range(cer.n):
            for axis in AXES:
                x, z, _ = cer.register_raw(q, axis)
                seen.add((x, z))
    return len(seen)


@dataclass(frozen=True)
class Decomposition:
    """``target = sign * prod_q CER[q, axes[q]]`` (empty axis means no factor)."""

    axes: tuple[str, ...]
    sign: int

    @property
    def eps(self) -> np.ndarray:
        out = np.zeros((len(self.axes), 3), dtype=np.uint8)
        for q, a in enumerate(self.axes):
            if a:
                out[q, AXES.index(a)] = 1
        return out

    @property
    def support(self) -> set[int]:
        return {q for q, a in enumerate(self.axes) if a}


def decompose_raw(cer: Cer, x: int, z: int) -> list[str]:
    axes = []
    for q in range(cer.n):
        ex = anticommute_raw(x, z, cer.zx[q], cer.zz[q])
        ez = anticommute_raw(x, z, cer.xx[q], cer.xz[q])
        axes.append("Y" if ex and ez else "X" if ex else "Z" if ez else "")
    return axes


def decompose(cer: Cer, s: PauliString) -> Decomposition:
    if s.n != cer.n:
        raise ValueError("dimension mismatch")
    axes = decompose_raw(cer, s.x, s.z)
    x = z = p = 0
    for q, a in enumerate(axes):
        if a:
            x, z, p = mul_raw(x, z, p, *cer.register_raw(q, a))
    if (x, z) != (s.x, s.z) or p not in (0, 2):
        raise AssertionError("CER rows failed to decompose target")  # invalid CER
    return Decomposition(tuple(axes), 1 if p == (s.phase & 3) else -1)


def support(d: Decomposition) -> set[int]:
    return d.support


def find_implemented(cer: Cer, targets: Sequence[PauliString]) -> list[tuple[int, int, str, int]]:
    """All ``(target index, q, axis, sign)`` with ``CER[q, axis] == sign * target``."""
    index: dict[tuple[int, int], list[int]] = {}
    for i, t in enumerate(targets):
        index.setdefault((t.x, t.z), []).append(i)
    hits = []
    for q in range(cer.n):
        for axis in AXES:
            x, z, p = cer.register_raw(q, axis)
            for i in index.get((x, z), ()):
                hits.append((i, q, axis, 1 if p == targets[i].phase else -1))
    hits.sort()
    return hits


_SQ_CACHE: list[tuple[str, ...]] | None = None


def single_qubit_cliffords() -> list[tuple[str, ...]]:
    """The 24 one-qubit Cliffords (signed action on Z, X) as shortest h/s/Pauli words."""
    global _SQ_CACHE
    if _SQ_CACHE is None:
        start = Cer(1)
        key = lambda c: (c.zx[0], c.zz[0], c.zp[0], c.xx[0], c.xz[0], c.xp[0])
        seen = {key(start): ()}
        frontier = [((), start)]
        while frontier:
            nxt = []
            for word, cer in frontier:
                for g in ("h", "s", "x", "z"):
                    c2 = apply_gate(cer, Gate(g, (0,)))
                    k = key(c2)
                    if k not in seen:
                        seen[k] = word + (g,)
                        nxt.append((word + (g,), c2))
            frontier = nxt
        words = sorted(seen.values(), key=lambda w: (len(w), w))
        assert len(words) == 24
        _SQ_CACHE = words
    return _SQ_CACHE

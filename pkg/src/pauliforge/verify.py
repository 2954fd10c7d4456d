"""Independent correctness oracles: dense simulation, tableau equality, network soundness.

The dense path is deliberately naive: gates are applied to full
``2**n x 2**n`` arrays with no stabilizer shortcuts, so it shares nothing
with the CER update rules it is used to check.  Qubit 0 is the most
significant tensor factor, matching the leftmost letter of Pauli labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cer import Cer, from_circuit
from .circuit import Circuit, Gate, Rotation, angle_value
from .pauli import PauliString, commutes

__all__ = [
    "EquivalenceReport",
    "MAX_DENSE_QUBITS",
    "pauli_matrix",
    "dense_unitary",
    "network_unitary",
    "equivalent_up_to_phase",
    "tableau_equivalent",
    "pauli_network_sound",
    "check_connectivity",
]

MAX_DENSE_QUBITS = 12

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_ONE_QUBIT = {"h": _H, "s": _S, "sdg": _S.conj().T, "x": _X, "y": _Y, "z": _Z}
_LETTER = {"I": _I, "X": _X, "Y": _Y, "Z": _Z}


@dataclass(frozen=True)
class EquivalenceReport:
    kind: str
    passed: bool
    max_deviation: float = 0.0
    witness: object = None

    def __bool__(self) -> bool:
        return self.passed


def pauli_matrix(p: PauliString) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for q in range(p.n):
        out = np.kron(out, _LETTER[p.letter(q)])
    return out * (1j ** p.phase)


def _apply_1q(u: np.ndarray, mat: np.ndarray, q: int, n: int) -> np.ndarray:
    dim = u.shape[1]
    t = u.reshape((2,) * n + (dim,))
    t = np.tensordot(mat, t, axes=([1], [q]))
    t = np.moveaxis(t, 0, q)
    return t.reshape(2**n, dim)


def _apply_cx(u: np.ndarray, c: int, t: int, n: int) -> np.ndarray:
    dim = u.shape[1]
    ten = u.reshape((2,) * n + (dim,)).copy()
    sel = [slice(None)] * (n + 1)
    sel[c] = 1
    sub = ten[tuple(sel)]
    tt = t if t < c else t - 1
    ten[tuple(sel)] = np.flip(sub, axis=tt)
    return ten.reshape(2**n, dim)


def dense_unitary(circuit: Circuit, assignment: Mapping[str, float] | None = None) -> np.ndarray:
    """Matrix of ``circuit``; rotations are ``exp(i * sign * angle * P_q)``."""
    n = circuit.n
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense simulation capped at {MAX_DENSE_QUBITS} qubits")
    u = np.eye(2**n, dtype=complex)
    for op in circuit.ops:
        if isinstance(op, Gate):
            if op.name == "cx":
                u = _apply_cx(u, op.qubits[0], op.qubits[1], n)
            else:
                u = _apply_1q(u, _ONE_QUBIT[op.name], op.qubits[0], n)
        else:
            theta = op.sign * angle_value(op.angle, assignment)
            mat = np.cos(theta) * _I + 1j * np.sin(theta) * _LETTER[op.axis]
            u = _apply_1q(u, mat, op.qubit, n)
    return u


def network_unitary(
    targets: Sequence[PauliString], angles: Sequence[float]
) -> np.ndarray:
    """``exp(i a_L S_L) ... exp(i a_1 S_1)``: target 0 acts first."""
    n = targets[0].n
    u = np.eye(2**n, dtype=complex)
    ident = np.eye(2**n, dtype=complex)
    for s, a in zip(targets, angles):
        u = (np.cos(a) * ident + 1j * np.sin(a) * pauli_matrix(s)) @ u
    return u


def equivalent_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> EquivalenceReport:
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    dim = u.shape[0]
    overlap = abs(np.trace(u.conj().T @ v)) / dim
    dev = float(1.0 - overlap)
    return EquivalenceReport("DenseUpToGlobalPhase", dev <= tol, dev)


def tableau_equivalent(a: Circuit, b: Circuit, permutation: Sequence[int] | None = None) -> EquivalenceReport:
    """Compare the CERs of two Clifford circuits.

    With ``permutation`` the claim is ``a == b ∘ relabel``: the relabel moves
    qubit ``permutation[p]`` to position ``p`` and then ``b`` runs, so every
    register of ``a`` equals the matching register of ``b`` with qubit
    index ``q`` mapped to ``permutation[q]``.
    """
    ca, cb = from_circuit(a), from_circuit(b)
    if permutation is None:
        ok = ca == cb
        return EquivalenceReport("TableauExact", ok, 0.0 if ok else 1.0)
    perm = list(permutation)
    if sorted(perm) != list(range(ca.n)):
        raise ValueError("not a permutation")
    for q in range(ca.n):
        for axis in ("Z", "X"):
            if cb.register(q, axis).embed(ca.n, perm) != ca.register(q, axis):
                return EquivalenceReport("TableauUpToPermutation", False, 1.0, (q, axis))
    return EquivalenceReport("TableauUpToPermutation", True, 0.0)


def pauli_network_sound(
    circuit: Circuit, targets: Sequence[PauliString], initial: Cer | None = None
) -> EquivalenceReport:
    """Replay ``circuit`` on the CER and check every rotation against its target.

    At each rotation, ``sign * CER[q, axis]`` must equal the target it
    implements; every target must be implemented exactly once, and any two
    anticommuting targets must be implemented in list order.
    """
    cer = Cer(circuit.n) if initial is None else initial.copy()
    position: dict[int, int] = {}
    for pos, op in enumerate(circuit.ops):
        if isinstance(op, Gate):
            cer.apply(op)
            continue
        if op.implements is None:
            return EquivalenceReport("PauliNetworkSound", False, 1.0, pos)
        l = op.implements
        if not 0 <= l < len(targets) or l in position:
            return EquivalenceReport("PauliNetworkSound", False, 1.0, pos)
        reg = cer.register(op.qubit, op.axis)
        if op.sign < 0:
            reg = reg.negate()
        if reg != targets[l]:
            return EquivalenceReport("PauliNetworkSound", False, 1.0, pos)
        position[l] = pos
    if len(position) != len(targets):
        missing = next(i for i in range(len(targets)) if i not in position)
        return EquivalenceReport("PauliNetworkSound", False, 1.0, ("missing", missing))
    for a in range(len(targets)):
        for b in range(a + 1, len(targets)):
            if position[a] > position[b] and not commutes(targets[a], targets[b]):
                return EquivalenceReport("PauliNetworkSound", False, 1.0, ("order", a, b))
    return EquivalenceReport("PauliNetworkSound", True, 0.0)


def check_connectivity(circuit: Circuit, graph) -> bool:
    return all(graph.has_edge(*e) for e in circuit.two_qubit_edges())

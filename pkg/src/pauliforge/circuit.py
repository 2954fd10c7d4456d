"""Clifford+rotation circuits: records, counting, inversion, peephole, I/O.

Rotations follow the convention ``Rotation(axis, q, angle, sign)`` =
``exp(i * sign * angle * P_q)``.  A circuit applies its ops left to right in
time, so the unitary of ``[A, B]`` is ``B @ A``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Gate",
    "Rotation",
    "Circuit",
    "CLIFFORD_GATES",
    "cancel_adjacent",
    "parse_qasm",
]

CLIFFORD_GATES = ("h", "s", "sdg", "x", "y", "z", "cx")
_INVERSE = {"h": "h", "s": "sdg", "sdg": "s", "x": "x", "y": "y", "z": "z", "cx": "cx"}


@dataclass(frozen=True, slots=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.name not in _INVERSE:
            raise ValueError(f"unknown gate {self.name!r}")
        arity = 2 if self.name == "cx" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} takes {arity} qubit(s)")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("cx control and target must differ")

    def inverse(self) -> Gate:
        return Gate(_INVERSE[self.name], self.qubits)

    def to_record(self) -> list:
        return [self.name, *self.qubits]

    def __repr__(self) -> str:
        return f"{self.name}({','.join(map(str, self.qubits))})"


def h(q: int) -> Gate:
    return Gate("h", (q,))


def cx(c: int, t: int) -> Gate:
    return Gate("cx", (c, t))


@dataclass(frozen=True, slots=True)
class Rotation:
    axis: str
    qubit: int
    angle: Union[float, str]
    sign: int = 1
    implements: int | None = None

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)

    def to_record(self) -> dict:
        rec = {"rot": self.axis, "q": self.qubit, "angle": self.angle, "sign": self.sign}
        if self.implements is not None:
            rec["implements"] = self.implements
        return rec


Op = Union[Gate, Rotation]


def op_from_record(rec) -> Op:
    if isinstance(rec, dict):
        return Rotation(rec["rot"], rec["q"], rec["angle"], rec.get("sign", 1), rec.get("implements"))
    return Gate(rec[0], tuple(rec[1:]))


@dataclass
class Circuit:
    n: int
    ops: list[Op] = field(default_factory=list)

    # building ----------------------------------------------------------
    def append(self, op: Op) -> Circuit:
        for q in op.qubits:
            if not 0 <= q < self.n:
                raise IndexError(f"qubit {q} out of range for n={self.n}")
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[Op]) -> Circuit:
        for op in ops:
            self.append(op)
        return self

    def __iter__(self) -> Iterator[Op]:
        return iter(self.ops)

    def __len__(self) -> int:
        return len(self.ops)

    def copy(self) -> Circuit:
        return Circuit(self.n, list(self.ops))

    # queries -----------------------------------------------------------
    @property
    def gates(self) -> list[Gate]:
        return [op for op in self.ops if isinstance(op, Gate)]

    @property
    def rotations(self) -> list[Rotation]:
        return [op for op in self.ops if isinstance(op, Rotation)]

    @property
    def is_clifford(self) -> bool:
        return all(isinstance(op, Gate) for op in self.ops)

    def cnot_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Gate) and op.name == "cx")

    def final_clifford_start(self) -> int:
        """Position right after the last rotation."""
        for i in range(len(self.ops) - 1, -1, -1):
            if isinstance(self.ops[i], Rotation):
                return i + 1
        return 0

    def cnot_count_excluding_final_clifford(self) -> int:
        stop = self.final_clifford_start()
        return sum(1 for op in self.ops[:stop] if isinstance(op, Gate) and op.name == "cx")

    def depth(self) -> int:
        level = [0] * self.n
        for op in self.ops:
            d = max(level[q] for q in op.qubits) + 1
            for q in op.qubits:
                level[q] = d
        return max(level, default=0)

    def two_qubit_edges(self) -> set[tuple[int, int]]:
        return {tuple(sorted(op.qubits)) for op in self.ops if isinstance(op, Gate) and op.name == "cx"}

    def inverse(self) -> Circuit:
        if not self.is_clifford:
            raise ValueError("only Clifford circuits can be inverted")
        return Circuit(self.n, [g.inverse() for g in reversed(self.ops)])

    def relabel(self, mapping, n: int | None = None) -> Circuit:
        """Rename qubit ``q`` to ``mapping[q]``."""
        out = Circuit(self.n if n is None else n)
        for op in self.ops:
            if isinstance(op, Gate):
                out.ops.append(Gate(op.name, tuple(mapping[q] for q in op.qubits)))
            else:
                out.ops.append(Rotation(op.axis, mapping[op.qubit], op.angle, op.sign, op.implements))
        return out

    # serialization -----------------------------------------------------
    def to_records(self) -> list:
        return [op.to_record() for op in self.ops]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "ops": self.to_records()}, separators=(",", ":"))

    @classmethod
    def from_records(cls, n: int, records) -> Circuit:
        return cls(n, [op_from_record(r) for r in records])

    @classmethod
    def from_json(cls, text: str) -> Circuit:
        data = json.loads(text)
        return cls.from_records(data["n"], data["ops"])

    def parameters(self) -> list[str]:
        seen: dict[str, None] = {}
        for op in self.rotations:
            if isinstance(op.angle, str):
                seen.setdefault(op.angle)
        return list(seen)

    def to_qasm(self) -> str:
        """OpenQASM 2 text.

        Numeric circuits become a flat program.  Symbolic angles are emitted
        as a parameterized ``gate pauli_network(...)`` definition whose
        parameter order is given by :meth:`parameters`.
        """
        params = self.parameters()
        lines = []
        wire = (lambda q: f"q{q}") if params else (lambda q: f"q[{q}]")
        for op in self.ops:
            if isinstance(op, Gate):
                lines.append(f"{op.name} {','.join(wire(q) for q in op.qubits)};")
            else:
                # exp(i s a P) = r_P(-2 s a)
                coeff = -2 * op.sign
                if isinstance(op.angle, str):
                    arg = f"{coeff}*{op.angle}"
                else:
                    arg = repr(float(coeff * op.angle))
                lines.append(f"r{op.axis.lower()}({arg}) {wire(op.qubit)};")
        head = ['OPENQASM 2.0;', 'include "qelib1.inc";']
        if params:
            qs = ",".join(f"q{q}" for q in range(self.n))
            body = "\n".join("  " + ln for ln in lines)
            head.append(f"gate pauli_network({','.join(params)}) {qs} {{\n{body}\n}}")
            head.append(f"qreg q[{self.n}];")
            return "\n".join(head) + "\n"
        head.append(f"qreg q[{self.n}];")
        return "\n".join(head + lines) + "\n"


_QASM_OP = re.compile(r"^(\w+)(?:\(([^)]*)\))?\s+([^;]+);$")


def parse_qasm(text: str) -> Circuit:
    """Parse the QASM subset written by :meth:`Circuit.to_qasm`.

    Rotation ``implements`` tags are not recoverable from QASM; symbolic
    angles of the form ``theta_<l>`` are tagged with ``implements=l``.
    """
    n = None
    ops: list[Op] = []
    body = text
    m = re.search(r"gate\s+pauli_network\(([^)]*)\)\s*([^{]*)\{(.*?)\}", text, re.S)
    if m:
        body = m.group(3)
    for raw in text.splitlines():
        s = raw.strip()
        mm = re.match(r"qreg\s+\w+\[(\d+)\];", s)
        if mm:
            n = int(mm.group(1))
    if n is None:
        raise ValueError("missing qreg declaration")
    for raw in body.splitlines():
        s = raw.strip()
        if not s or s.startswith(("OPENQASM", "include", "qreg", "creg", "gate", "}", "//")):
            continue
        mm = _QASM_OP.match(s)
        if not mm:
            raise ValueError(f"cannot parse QASM line {s!r}")
        name, arg, wires = mm.groups()
        qubits = tuple(int(re.sub(r"\D", "", w)) for w in wires.split(","))
        if name in ("rx", "ry", "rz"):
            axis = name[1].upper()
            coeff_txt, _, sym = arg.partition("*")
            if sym:
                coeff = float(coeff_txt)
                sign = -1 if coeff > 0 else 1
                implements = int(sym.rsplit("_", 1)[1]) if re.fullmatch(r"\w+_\d+", sym) else None
                ops.append(Rotation(axis, qubits[0], sym.strip(), sign, implements))
            else:
                val = float(arg)
                ops.append(Rotation(axis, qubits[0], -val / 2.0, 1))
        else:
            ops.append(Gate(name, qubits))
    return Circuit(n, ops)


def cancel_adjacent(circuit: Circuit) -> Circuit:
    """Cancel gate pairs that are mutually inverse and adjacent on their wires.

    Cascades: removing a pair can expose another cancellable pair.
    Rotations act as barriers on their qubit.
    """
    out: list[Op | None] = []
    stacks: list[list[int]] = [[] for _ in range(circuit.n)]
    for op in circuit.ops:
        if isinstance(op, Gate):
            tops = [stacks[q][-1] if stacks[q] else -1 for q in op.qubits]
            j = tops[0]
            if j >= 0 and all(t == j for t in tops):
                prev = out[j]
                if (
                    isinstance(prev, Gate)
                    and prev.qubits == op.qubits
                    and prev.name == _INVERSE[op.name]
                ):
                    out[j] = None
                    for q in op.qubits:
                        stacks[q].pop()
                    continue
        out.append(op)
        for q in op.qubits:
            stacks[q].append(len(out) - 1)
    return Circuit(circuit.n, [op for op in out if op is not None])


def angle_value(angle, assignment: dict | None = None) -> float:
    if isinstance(angle, str):
        if assignment is None or angle not in assignment:
            raise KeyError(f"no value bound for angle {angle!r}")
        return float(assignment[angle])
    if not math.isfinite(angle):
        raise ValueError("non-finite angle")
    return float(angle)

"""Signed Pauli strings, GF(2) rank and fermion-to-qubit Majorana operators.

A Pauli string over ``n`` qubits is stored as two packed integer bit rows
(``x`` and ``z``, bit ``q`` belongs to qubit ``q``) plus a phase exponent
``phase`` mod 4.  The operator is ``i**phase`` times the tensor product of the
letters ``I, X, Y, Z`` read off the bits, with ``x=z=1`` meaning ``Y`` itself
(not ``XZ``).  Hermitian strings therefore have ``phase in {0, 2}``.

Text form: optional sign (``+``, ``-``, ``i``, ``-i``, ``+i``) followed by one
letter per qubit, qubit 0 leftmost, e.g. ``"-XXYIZ"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "PauliString",
    "DimensionError",
    "InvalidExcitationError",
    "multiply",
    "commutes",
    "gf2_rank",
    "gf2_basis",
    "normalize_hermitian",
    "MappingKind",
    "FermionMapping",
    "majorana",
    "majorana_product",
    "double_excitation_terms",
]


class DimensionError(ValueError):
    """Raised when Pauli strings over different qubit counts are combined."""


class InvalidExcitationError(ValueError):
    """Raised for excitation operators with repeated mode indices."""


_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return v.bit_count()


def mul_raw(x1: int, z1: int, p1: int, x2: int, z2: int, p2: int) -> tuple[int, int, int]:
    """Multiply two Pauli strings given as raw ``(x, z, phase)`` triples."""
    # convert to X^x Z^z form, where Y = i X Z
    e = p1 + p2 + _popcount(x1 & z1) + _popcount(x2 & z2) + 2 * _popcount(z1 & x2)
    x = x1 ^ x2
    z = z1 ^ z2
    return x, z, (e - _popcount(x & z)) & 3


@dataclass(frozen=True, slots=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError("bit rows exceed qubit count")
        if not 0 <= self.phase < 4:
            object.__setattr__(self, "phase", self.phase & 3)

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, sign: int = 1) -> PauliString:
        """One-local Pauli ``letter`` on ``qubit``."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for n={n}")
        bit = 1 << qubit
        x = bit if letter in "XY" else 0
        z = bit if letter in "ZY" else 0
        if letter not in "XYZI":
            raise ValueError(f"unknown Pauli letter {letter!r}")
        return cls(n, x, z, 0 if sign > 0 else 2)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        s = label.strip()
        phase = 0
        for prefix, p in (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0)):
            if s.startswith(prefix):
                phase = p
                s = s[len(prefix):]
                break
        x = z = 0
        for q, ch in enumerate(s):
            if ch == "X":
                x |= 1 << q
            elif ch == "Z":
                z |= 1 << q
            elif ch == "Y":
                x |= 1 << q
                z |= 1 << q
            elif ch != "I":
                raise ValueError(f"bad Pauli label {label!r}")
        return cls(len(s), x, z, phase)

    @classmethod
    def from_letters(cls, letters: dict[int, str], n: int, sign: int = 1) -> PauliString:
        x = z = 0
        for q, ch in letters.items():
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
        return cls(n, x, z, 0 if sign > 0 else 2)

    # views --------------------------------------------------------------
    def letter(self, q: int) -> str:
        return _LETTERS[((self.x >> q) & 1, (self.z >> q) & 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    @property
    def label(self) -> str:
        return _PREFIX[self.phase] + self.letters

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    @property
    def support(self) -> list[int]:
        m = self.x | self.z
        return [q for q in range(self.n) if (m >> q) & 1]

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def sign(self) -> int:
        if self.phase == 0:
            return 1
        if self.phase == 2:
            return -1
        raise ValueError(f"{self.label} is not Hermitian")

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def unsigned(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, 0)

    def negate(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.phase ^ 2)

    def same_up_to_sign(self, other: PauliString) -> bool:
        return self.n == other.n and self.x == other.x and self.z == other.z

    def symplectic(self) -> int:
        """Packed ``x | z << n`` row used for GF(2) work."""
        return self.x | (self.z << self.n)

    def embed(self, n: int, mapping: Sequence[int]) -> PauliString:
        """Relabel qubit ``q`` to ``mapping[q]`` inside an ``n``-qubit register."""
        x = z = 0
        for q in range(self.n):
            if (self.x >> q) & 1:
                x |= 1 << mapping[q]
            if (self.z >> q) & 1:
                z |= 1 << mapping[q]
        return PauliString(n, x, z, self.phase)

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return self.negate()


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Operator product ``a @ b`` with exact phase."""
    if a.n != b.n:
        raise DimensionError(f"cannot multiply {a.n}- and {b.n}-qubit strings")
    x, z, p = mul_raw(a.x, a.z, a.phase, b.x, b.z, b.phase)
    return PauliString(a.n, x, z, p)


def anticommute_raw(x1: int, z1: int, x2: int, z2: int) -> int:
    return (_popcount(x1 & z2) + _popcount(z1 & x2)) & 1


def commutes(a: PauliString, b: PauliString) -> bool:
    if a.n != b.n:
        raise DimensionError(f"cannot compare {a.n}- and {b.n}-qubit strings")
    return not anticommute_raw(a.x, a.z, b.x, b.z)


def _reduce(rows: Iterable[int]) -> list[int]:
    basis: dict[int, int] = {}  # pivot bit -> row
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return list(basis.values())


def gf2_rank(paulis: Iterable[PauliString]) -> int:
    """Rank over GF(2) of the symplectic rows, ignoring phases."""
    paulis = list(paulis)
    if not paulis:
        return 0
    n = paulis[0].n
    if any(p.n != n for p in paulis):
        raise DimensionError("mixed qubit counts")
    return len(_reduce(p.symplectic() for p in paulis))


def gf2_basis(paulis: Sequence[PauliString]) -> list[int]:
    """Indices of the first occurrence of each independent row (greedy basis)."""
    basis: dict[int, int] = {}
    chosen = []
    for i, p in enumerate(paulis):
        v = p.symplectic()
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                chosen.append(i)
                break
    return chosen


def normalize_hermitian(p: PauliString) -> tuple[PauliString, int]:
    """Return ``(i**w * p, w)`` with ``w`` in {0, 1} so the result is Hermitian.

    Anti-Hermitian strings (odd phase) are multiplied by ``i``; the caller
    absorbs ``i**-w`` into its rotation angle.
    """
    if p.phase & 1:
        return PauliString(p.n, p.x, p.z, (p.phase + 1) & 3), 1
    return p, 0


# --------------------------------------------------------------------------
# fermion-to-qubit mappings
# --------------------------------------------------------------------------


class MappingKind(enum.Enum):
    JORDAN_WIGNER = "jw"
    BRAVYI_KITAEV = "bk"


def _bk_update_set(j: int, n: int) -> set[int]:
    out = set()
    i = j + 1
    i += i & -i
    while i <= n:
        out.add(i - 1)
        i += i & -i
    return out


def _bk_parity_set(j: int) -> set[int]:
    """Qubits whose parity equals the occupation parity of modes ``0..j-1``."""
    out = set()
    i = j
    while i > 0:
        out.add(i - 1)
        i &= i - 1
    return out


def _bk_flip_set(j: int) -> set[int]:
    """Children of ``j`` in the Fenwick tree; with ``j`` they store mode ``j``."""
    out = set()
    i = j + 1
    parent = i & (i - 1)
    i -= 1
    while i != parent:
        out.add(i - 1)
        i &= i - 1
    return out


@dataclass(frozen=True)
class FermionMapping:
    kind: MappingKind
    n_modes: int

    def __post_init__(self) -> None:
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", MappingKind(self.kind.lower()))
        if self.n_modes < 1:
            raise ValueError("n_modes must be positive")

    @classmethod
    def jw(cls, n_modes: int) -> FermionMapping:
        return cls(MappingKind.JORDAN_WIGNER, n_modes)

    @classmethod
    def bk(cls, n_modes: int) -> FermionMapping:
        return cls(MappingKind.BRAVYI_KITAEV, n_modes)

    def occupation_set(self, mode: int) -> set[int]:
        """Qubits whose Z-parity is the occupation parity of ``mode``."""
        if self.kind is MappingKind.JORDAN_WIGNER:
            return {mode}
        return _bk_flip_set(mode) | {mode}


def majorana(mapping: FermionMapping, index: int) -> PauliString:
    """Majorana operator ``m_j`` (even index) or ``m̄_j`` (odd index) as a Pauli string.

    ``majorana(2j) = a_j^† + a_j`` and ``majorana(2j+1) = i(a_j^† - a_j)``.
    """
    n = mapping.n_modes
    if not 0 <= index < 2 * n:
        raise IndexError(f"majorana index {index} out of range for {n} modes")
    j, bar = divmod(index, 2)
    if mapping.kind is MappingKind.JORDAN_WIGNER:
        zs = (1 << j) - 1
        xs = 0
    else:
        xs = sum(1 << u for u in _bk_update_set(j, n))
        parity = _bk_parity_set(j)
        if bar:
            parity -= _bk_flip_set(j)
        zs = sum(1 << u for u in parity)
    bit = 1 << j
    x = xs | bit
    z = zs | (bit if bar else 0)
    return PauliString(n, x, z, 0)


def majorana_product(mapping: FermionMapping, indices: Sequence[int]) -> PauliString:
    """Left-to-right product of Majoranas, made Hermitian by ``normalize_hermitian``.

    Products of an even number of distinct Majoranas are anti-Hermitian only
    when the count is 2 mod 4; those come back multiplied by ``i``.
    """
    if not indices:
        raise ValueError("empty Majorana product")
    acc = PauliString(mapping.n_modes)
    for i in indices:
        acc = multiply(acc, majorana(mapping, i))
    return normalize_hermitian(acc)[0]


# coefficients of the double-excitation generator
#   a_i^† a_j^† a_k a_l - h.c. = (i/8) * sum(sign * monomial)
# (monomials carry their own phase from the left-to-right Majorana product)
# with each monomial given by which of (i, j, k, l) carries the barred Majorana
_DOUBLE_EXCITATION = (
    (+1, (0, 0, 0, 1)),
    (+1, (0, 0, 1, 0)),
    (-1, (0, 1, 0, 0)),
    (-1, (1, 0, 0, 0)),
    (-1, (1, 1, 1, 0)),
    (-1, (1, 1, 0, 1)),
    (+1, (1, 0, 1, 1)),
    (+1, (0, 1, 1, 1)),
)


def double_excitation_terms(
    mapping: FermionMapping, i: int, j: int, k: int, l: int
) -> list[tuple[PauliString, int]]:
    """The eight ``(monomial, sign)`` pairs of ``a_i^† a_j^† a_k a_l - h.c.``.

    The generator equals ``(i/8) * sum(sign * monomial)``; every monomial is a
    Hermitian Pauli string (four distinct Majoranas), the eight mutually
    commute and the first four generate the rest over GF(2).
    """
    modes = (i, j, k, l)
    if len(set(modes)) != 4:
        raise InvalidExcitationError(f"repeated mode index in {modes}")
    for m in modes:
        if not 0 <= m < mapping.n_modes:
            raise InvalidExcitationError(f"mode {m} out of range")
    out = []
    for sign, bars in _DOUBLE_EXCITATION:
        idx = [2 * m + b for m, b in zip(modes, bars)]
        acc = PauliString(mapping.n_modes)
        for t in idx:
            acc = multiply(acc, majorana(mapping, t))
        if not acc.is_hermitian:
            raise AssertionError("four-Majorana monomial must be Hermitian")
        out.append((acc, sign))
    return out

"""Architecture-aware Pauli-network and Clifford synthesis."""

from .arch import CouplingGraph, heavy_hex, parse_arch, path_graph
from .cer import Cer, decompose, find_implemented, from_circuit
from .circuit import Circuit, Gate, Rotation
from .clifford_db import CliffordDb, DbTask, canonical_key, load_default_db, verify_entry
from .clifford_synth import CliffordSpec, random_clifford_circuit, synthesize_clifford
from .pauli import FermionMapping, PauliString
from .pauli_synth import SynthesisConfig, SynthesisReport, compress_general, select_sublist, synthesize

__version__ = "0.1.0"

__all__ = [
    "Cer",
    "Circuit",
    "CliffordDb",
    "CliffordSpec",
    "CouplingGraph",
    "DbTask",
    "FermionMapping",
    "Gate",
    "PauliString",
    "Rotation",
    "SynthesisConfig",
    "SynthesisReport",
    "canonical_key",
    "compress_general",
    "decompose",
    "find_implemented",
    "from_circuit",
    "heavy_hex",
    "load_default_db",
    "parse_arch",
    "path_graph",
    "random_clifford_circuit",
    "select_sublist",
    "synthesize",
    "synthesize_clifford",
    "verify_entry",
]

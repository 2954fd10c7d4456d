import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import phase_distance, rotation_product
from pauliforge.arch import cycle_graph, heavy_hex, path_graph, star_graph
from pauliforge.cer import Cer, cer_trace, decompose, from_circuit
from pauliforge.circuit import Circuit, Gate
from pauliforge.clifford_synth import random_clifford_circuit
from pauliforge.pauli import FermionMapping, PauliString, gf2_rank
from pauliforge.pauli_synth import (
    METHODS,
    SynthesisConfig,
    compress_general,
    double_excitation_targets,
    mpr_synthesize,
    order_for_cancellation,
    select_sublist,
    steiner_synthesize,
    synthesize,
)
from pauliforge.verify import check_connectivity, dense_unitary, pauli_network_sound

P = PauliString.from_label


def assert_network(circ, targets, angles, g, reset):
    phys = [t.embed(g.n_phys, list(range(t.n))) for t in targets]
    assert pauli_network_sound(circ, phys).passed
    assert check_connectivity(circ, g)
    labels = [t.label for t in phys]
    # U = C_total * prod exp(i a S); C_total is the identity after a reset
    cliff = Circuit(circ.n, circ.gates)
    want = dense_unitary(cliff) @ rotation_product(labels, angles, g.n_phys)
    assert phase_distance(dense_unitary(circ), want) < 1e-9
    if reset:
        assert from_circuit(cliff).is_identity()


def random_targets(rng, n, m):
    out = []
    for _ in range(m):
        while True:
            x, z = (int(v) for v in rng.integers(0, 2**n, size=2))
            if x or z:
                break
        out.append(PauliString(n, x, z, int(rng.choice([0, 2]))))
    return out


# ---------------------------------------------------------------------------
# Steiner synthesis


def test_ss_examples():
    c, r = steiner_synthesize([P("Z")], [0.2], path_graph(1))
    assert r.total_cnots == 0 and len(c.rotations) == 1
    _, r = steiner_synthesize([P("ZZ")], [0.2], path_graph(2))
    assert r.total_cnots == 2
    # x0 xor x4 across three idle nodes needs the 2d-1 bridge, both ways
    _, r = steiner_synthesize([P("ZIIIZ")], [0.2], path_graph(5))
    assert r.total_cnots == 14


def test_empty_targets():
    for m in METHODS:
        c, r = synthesize([], [], path_graph(3), cfg=SynthesisConfig(method=m))
        assert c.ops == [] and r.total_cnots == 0


def test_input_errors():
    with pytest.raises(ValueError):
        synthesize([P("ZZ")], [0.1, 0.2], path_graph(2))
    with pytest.raises(ValueError):
        synthesize([P("ZZZ")], [0.1], path_graph(2))
    with pytest.raises(ValueError):
        SynthesisConfig(method="magic")


# ---------------------------------------------------------------------------
# lazy synthesis


def test_ls_free_rotations(db):
    c, r = synthesize([P("IX")], [0.3], path_graph(2), cfg=SynthesisConfig(method="ls"), db=db)
    assert r.total_cnots == 0
    c, r = synthesize(
        [P("ZZ"), P("ZZ")], [0.3, 0.4], path_graph(2), cfg=SynthesisConfig(method="ls", reset_policy="none"), db=db
    )
    assert r.total_cnots == 1


def test_ss_vs_ls_cross_check(db):
    rng = np.random.default_rng(3)
    targets = random_targets(rng, 4, 6)
    angles = list(rng.uniform(-1, 1, 6))
    g = path_graph(4)
    a, _ = synthesize(targets, angles, g, cfg=SynthesisConfig(method="ss"), db=db)
    b, _ = synthesize(targets, angles, g, cfg=SynthesisConfig(method="ls"), db=db)
    assert phase_distance(dense_unitary(a), dense_unitary(b)) < 1e-9


# ---------------------------------------------------------------------------
# sublist selection and general compression


def test_select_sublist():
    m = FermionMapping.jw(4)
    targets, _ = double_excitation_targets(m, (0, 1, 2, 3), 0.3)
    chosen, gens = select_sublist(targets, 4, 8)
    assert chosen == list(range(8)) and len(gens) == 4
    z = P("ZI")
    chosen, _ = select_sublist([z, -z, z, P("XI")], 1, 8)
    assert chosen == [0, 1, 2]
    chosen, _ = select_sublist([P("ZI"), P("XI"), P("IZ")], 2, 8)
    assert chosen == [0, 1]
    assert select_sublist([P("ZI")] * 10, 3, 8)[0] == list(range(8))
    with pytest.raises(ValueError):
        select_sublist([z], 0, 8)


def test_compress_general_examples():
    c = compress_general([P("ZZ")], path_graph(2), [1])
    assert c.cnot_count() == 1
    assert decompose(from_circuit(c), P("ZZ")).support == {1}
    assert compress_general([P("IZI")], path_graph(3), [1]).ops == []
    with pytest.raises(ValueError):
        compress_general([P("ZZI"), P("XXI")], path_graph(3), [0, 2])


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1))
def test_compress_general_supports(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    m = int(rng.integers(1, min(3, n - 1) + 1))
    if n > 2 and rng.integers(2):
        g = cycle_graph(n)
        start = int(rng.integers(0, n))
        dest = [(start + i) % n for i in range(m)]
    else:
        g = path_graph(n)
        dest = list(range(m)) if rng.integers(2) else list(range(n - m, n))
    paulis = random_targets(rng, n, m)
    initial = from_circuit(random_clifford_circuit(n, 5, seed)) if n > 1 else None
    c = compress_general(paulis, g, dest, initial)
    assert check_connectivity(c, g)
    cer = initial.copy() if initial is not None else Cer(n)
    cer.apply_all(c.gates)
    for p in paulis:
        assert decompose(cer, p).support <= set(dest)


@pytest.mark.parametrize("n,m", [(3, 1), (4, 2), (5, 3), (6, 3)])
def test_tightness_of_independent_z(n, m):
    # M independent commuting Paulis never fit on fewer than M qubits
    zs = [PauliString.single(n, i, "Z") for i in range(m)]
    for seed in range(30):
        cer = from_circuit(random_clifford_circuit(n, 12, seed))
        used = set().union(*(decompose(cer, z).support for z in zs))
        assert len(used) >= m
    c = compress_general(zs, path_graph(n), list(range(n - m, n)))
    cer = from_circuit(c)
    assert set().union(*(decompose(cer, z).support for z in zs)) == set(range(n - m, n))


# ---------------------------------------------------------------------------
# ordering and double excitations


def test_order_for_cancellation():
    assert order_for_cancellation([P("ZZ")] * 3, path_graph(2)) == [0, 1, 2]
    assert order_for_cancellation([P("ZZ"), P("XX")], path_graph(2)) == [0, 1]
    targets, angles = double_excitation_targets(FermionMapping.jw(4), (0, 1, 2, 3), 0.4)
    g = path_graph(4)
    order = order_for_cancellation(targets, g)
    assert sorted(order) == list(range(8))
    base = steiner_synthesize(targets, angles, g)[1].total_cnots
    ordered = steiner_synthesize([targets[i] for i in order], [angles[i] for i in order], g)[1].total_cnots
    assert ordered <= base


def test_double_excitation_unitary():
    import scipy.linalg

    n, theta = 4, 0.37
    m = FermionMapping.jw(n)
    targets, angles = double_excitation_targets(m, (0, 1, 2, 3), theta)
    from pauliforge.pauli import majorana
    from oracles import pauli

    d = lambda p: pauli(p.letters, p.phase)  # noqa: E731
    a = [(d(majorana(m, 2 * j)) + 1j * d(majorana(m, 2 * j + 1))) / 2 for j in range(n)]
    op = a[0].conj().T @ a[1].conj().T @ a[2] @ a[3]
    gen = op - op.conj().T
    want = scipy.linalg.expm(theta * gen)
    got = rotation_product([t.label for t in targets], angles, n)
    assert phase_distance(want, got) < 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.7])
def test_mpr_double_excitation(db, theta):
    g = path_graph(6)
    circ, rep = mpr_synthesize((0, 1, 2, 3), FermionMapping.jw(6), g, theta=theta, db=db)
    targets, angles = double_excitation_targets(FermionMapping.jw(6), (0, 1, 2, 3), theta)
    assert_network(circ, targets, angles, g, reset=True)


def test_mpr_heavy_hex_adjacent_modes(db):
    g = heavy_hex(2)
    circ, rep = mpr_synthesize((0, 1, 2, 3), FermionMapping.jw(4), g, theta=0.2, db=db)
    assert check_connectivity(circ, g)
    assert from_circuit(Circuit(circ.n, circ.gates)).is_identity()


# ---------------------------------------------------------------------------
# multi-Pauli lazy synthesis


PAIR = [P("XXYIZ"), P("YYYXZ")]


def test_mpls_worked_pair(db):
    g = path_graph(5)
    angles = [0.31, -0.77]
    circ, rep = synthesize(PAIR, angles, g, cfg=SynthesisConfig(method="mpls"), db=db)
    assert_network(circ, PAIR, angles, g, reset=True)
    assert rep.cnots_excluding_final_clifford <= steiner_synthesize(PAIR, angles, g)[1].cnots_excluding_final_clifford


def test_mpls_single_target_not_worse_than_ss(db):
    rng = np.random.default_rng(8)
    for _ in range(5):
        t = random_targets(rng, 5, 1)
        g = path_graph(5)
        a = synthesize(t, [0.1], g, cfg=SynthesisConfig(method="mpls", reset_policy="none"), db=db)[1]
        b = steiner_synthesize(t, [0.1], g)[1]
        assert a.cnots_excluding_final_clifford <= b.cnots_excluding_final_clifford


def test_determinism(db):
    rng = np.random.default_rng(1)
    targets = random_targets(rng, 5, 8)
    angles = [f"theta_{i}" for i in range(8)]
    cfg = SynthesisConfig(method="mpls", seed=4)
    a = synthesize(targets, angles, star_graph(4), cfg=cfg, db=db)
    b = synthesize(targets, angles, star_graph(4), cfg=cfg, db=db)
    assert a[0] == b[0] and a[1].to_dict() == b[1].to_dict()


@settings(max_examples=25)
@given(
    st.integers(0, 2**32 - 1),
    st.sampled_from(METHODS),
    st.sampled_from(["at_end", "per_list", "none"]),
    st.sampled_from(["random", "min_cnot"]),
)
def test_random_instances_sound(db, seed, method, reset, leaf):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    g = [path_graph(n), cycle_graph(n) if n > 2 else path_graph(n), star_graph(n - 1)][int(rng.integers(3))]
    targets = random_targets(rng, n, int(rng.integers(1, 12)))
    angles = list(rng.uniform(-np.pi, np.pi, len(targets)))
    cfg = SynthesisConfig(method=method, reset_policy=reset, leaf_choice=leaf, seed=seed % 1000)
    circ, rep = synthesize(targets, angles, g, cfg=cfg, db=db)
    assert_network(circ, targets, angles, g, reset=(reset != "none" and method != "ss") or method == "ss")
    assert rep.total_cnots == circ.cnot_count()


def test_distinct_paulis_grow_with_cnots(db):
    rng = np.random.default_rng(0)
    targets = random_targets(rng, 5, 10)
    circ, _ = synthesize(targets, list(rng.uniform(size=10)), path_graph(5), cfg=SynthesisConfig(method="mpls"), db=db)
    from pauliforge.cer import distinct_pauli_count

    assert distinct_pauli_count(cer_trace(circ)) <= 3 * 5 + 4 * circ.cnot_count()
    assert gf2_rank(targets) <= 10


def test_mpr_beats_ordered_ss_on_heavy_hex(db):
    from pauliforge.arch import bfs_layout

    g, n = heavy_hex(2), 12
    m = FermionMapping.jw(n)
    lay = bfs_layout(g, n)
    wins = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        s = int(rng.integers(0, n - 3))
        modes, theta = (s, s + 1, s + 2, s + 3), float(rng.uniform(-3, 3))
        mpr = mpr_synthesize(modes, m, g, layout=lay, theta=theta, db=db)[1].total_cnots
        t, a = double_excitation_targets(m, modes, theta)
        order = order_for_cancellation([x.embed(g.n_phys, lay) for x in t], g)
        ss = steiner_synthesize([t[i] for i in order], [a[i] for i in order], g, lay)[1].total_cnots
        wins += mpr <= ss
    assert wins >= 10

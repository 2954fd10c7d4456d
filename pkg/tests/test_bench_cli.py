import json

import pytest

from pauliforge.bench import ExperimentSpec, report_to_csv, run_sweep, validate_report
from pauliforge.cer import from_circuit
from pauliforge.cli import main
from pauliforge.clifford_db import default_db_path
from pauliforge.clifford_synth import cer_to_json, random_clifford_circuit

PAULI_SPEC = {
    "generator": {"type": "random4majorana", "n_modes": 5, "n_paulis": 6, "mapping": "bk"},
    "arch": "path:5",
    "methods": ["ss", "ls", "mpls"],
    "seeds": [0, 1],
}
CLIFF_SPEC = {
    "generator": {"type": "random_clifford", "n": 4, "k": 8},
    "arch": "path:4",
    "methods": ["paulipair", "paulipair-uo", "mpcs", "mpcs-uo"],
    "seeds": [0, 1],
}


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(*argv):
    assert main([str(a) for a in argv]) == 0


def test_gen_synth_verify(tmp_path, capsys):
    spec = write(tmp_path / "spec.json", PAULI_SPEC)
    targets = tmp_path / "t.json"
    run("gen", "--spec", spec, "--seed", 3, "--out", targets)
    run(
        "synth", "--method", "mpls", "--arch", "path:5", "--targets", targets,
        "--report", tmp_path / "r.json", "--circuit", tmp_path / "c.json", "--qasm", tmp_path / "c.qasm",
    )
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["total_cnots"] >= 0
    assert (tmp_path / "c.qasm.params.json").exists()
    capsys.readouterr()
    for mode in ("dense", "sound"):
        run("verify", "--circuit", tmp_path / "c.json", "--against", targets, "--mode", mode)
        assert json.loads(capsys.readouterr().out)["passed"]
    run("verify", "--circuit", tmp_path / "c.qasm", "--against", tmp_path / "c.json")


def test_verify_detects_mismatch(tmp_path, capsys):
    spec = write(tmp_path / "spec.json", PAULI_SPEC)
    targets = tmp_path / "t.json"
    other = tmp_path / "u.json"
    run("gen", "--spec", spec, "--seed", 3, "--out", targets)
    run("gen", "--spec", spec, "--seed", 4, "--out", other)
    run("synth", "--method", "ss", "--arch", "path:5", "--targets", targets, "--report", tmp_path / "r.json", "--circuit", tmp_path / "c.json")
    assert main(["verify", "--circuit", str(tmp_path / "c.json"), "--against", str(other)]) == 1


def test_cliff_synth_roundtrip(tmp_path):
    src = random_clifford_circuit(4, 10, 5)
    cer_file = write(tmp_path / "cer.json", cer_to_json(from_circuit(src)))
    (tmp_path / "src.json").write_text(src.to_json())
    run("cliff-synth", "--variant", "mpcs", "--arch", "path:4", "--in", cer_file, "--out", tmp_path / "o.json")
    out = json.loads((tmp_path / "o.json").read_text())
    assert out["permutation"] == [0, 1, 2, 3]
    (tmp_path / "c.json").write_text(json.dumps(out["circuit"]))
    run("verify", "--circuit", tmp_path / "c.json", "--against", tmp_path / "src.json", "--mode", "tableau")


@pytest.mark.parametrize("spec", [PAULI_SPEC, CLIFF_SPEC])
def test_bench_reruns_byte_identical(tmp_path, spec):
    path = write(tmp_path / "spec.json", spec)
    for tag in ("a", "b"):
        run("bench", "--spec", path, "--out", tmp_path / f"{tag}.json", "--csv", tmp_path / f"{tag}.csv")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    report = json.loads((tmp_path / "a.json").read_text())
    validate_report(report)
    assert len(report["results"]) == len(spec["methods"]) * len(spec["seeds"])
    assert all(r["verified"] for r in report["results"])


def test_report_schema_and_csv(db):
    report = run_sweep(ExperimentSpec.from_dict(PAULI_SPEC), db)
    assert set(report["summary"]) == {"ss", "ls", "mpls"}
    lines = report_to_csv(report).splitlines()
    assert lines[0].startswith("method,seed,") and len(lines) == 7
    bad = dict(report, results=[{"method": "ss"}])
    with pytest.raises(ValueError):
        validate_report(bad)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec.from_dict(dict(PAULI_SPEC, methods=["mpcs"]))
    with pytest.raises(ValueError):
        ExperimentSpec.from_dict(dict(PAULI_SPEC, generator={"type": "nope"}))
    with pytest.raises(ValueError):
        ExperimentSpec.from_dict(dict(PAULI_SPEC, seeds=[]))


def test_db_verify_shipped(capsys):
    assert main(["db", "verify", str(default_db_path())]) == 0
    assert "entries verified" in capsys.readouterr().out


def test_db_build_small(tmp_path, capsys):
    out = tmp_path / "db.json"
    run("db", "build", "--shapes", "path2", "--attempts", 2000, "--out", out)
    text = out.read_bytes()
    run("db", "build", "--shapes", "path2", "--attempts", 2000, "--out", tmp_path / "db2.json")
    assert (tmp_path / "db2.json").read_bytes() == text
    assert main(["db", "verify", str(out)]) == 0


def test_worker_pool_matches_serial(tmp_path):
    path = write(tmp_path / "spec.json", CLIFF_SPEC)
    run("bench", "--spec", path, "--out", tmp_path / "a.json")
    run("bench", "--spec", path, "--out", tmp_path / "b.json", "--workers", 2)
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

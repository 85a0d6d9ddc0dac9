import json

import jsonschema
import numpy as np
import pytest

from qmetrics import cli
from qmetrics.errors import ConsistencyFailure

OPTIMAL_QUBIT = """\
hamiltonian: {preset: pauli_z}
probe: {preset: max_variance}
basis: {preset: eq11}
theta: 0.39269908169872414
"""

SPIN_SCAN = """\
hamiltonian: {preset: spin_jy, j: 3/2}
probe: {preset: noon}
basis: {preset: jx_eigenbasis}
"""


@pytest.fixture
def config(tmp_path):
    def write(text: str, name: str = "scenario.yaml") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, argv):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def validate(name: str, doc: dict) -> None:
    jsonschema.validate(doc, cli.load_schema(name))


@pytest.mark.parametrize("x,text", [
    (0.0, "0"), (-0.0, "0"), (4.0, "4"), (1 / 3, "0.333333333333"), (2.5e-5, "2.5e-05"),
    (np.pi, "3.14159265359"),
])
def test_fmt(x, text):
    assert cli.fmt(x) == text


def test_dumps_is_deterministic_and_twelve_digits():
    doc = {"b": np.float64(1 / 7), "a": [np.int64(3), np.bool_(True), None]}
    text = cli.dumps(doc)
    assert text == cli.dumps(doc)
    assert "0.142857142857" in text and "0.1428571428571" not in text


def test_report_optimal_qubit(capsys, config):
    code, out, _ = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT)])
    assert code == 0
    doc = json.loads(out)
    validate("report", doc)
    (rep,) = doc["reports"]
    assert rep["J"] == 4
    assert rep["saturates_variance_bound"] is True
    assert len(rep["track"]["p"]) == 2


def test_report_theta_list(capsys, config):
    code, out, _ = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT),
                                "--set", "theta=[0, 0.5, 1.5]"])
    assert code == 0
    doc = json.loads(out)
    assert [r["theta"] for r in doc["reports"]] == [0, 0.5, 1.5]
    assert all(r["J"] == pytest.approx(4) for r in doc["reports"])


def test_report_eigenstate_zero(capsys, config):
    code, out, _ = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT),
                                "--set", "probe.preset=eigenstate"])
    assert code == 0
    assert json.loads(out)["reports"][0]["J"] == pytest.approx(0, abs=1e-12)


def test_report_rejects_non_hermitian_literal(capsys, config):
    text = OPTIMAL_QUBIT.replace("{preset: pauli_z}", "{matrix: [[1, 2], [0, -1]]}")
    code, _, err = run(capsys, ["report", "--config", config(text)])
    assert code == 2
    assert "hamiltonian.matrix[0][1]" in err


def test_report_literals(capsys, config):
    text = """\
hamiltonian: {matrix: [[0, 0, 0], [0, 1, 0], [0, 0, 5]]}
probe: {amplitudes: [1, 0, 1], normalize: true}
basis:
  vectors: [[1, 0, 1], [1, 0, -1], [0, 1, 0]]
  normalize: true
"""
    code, out, _ = run(capsys, ["report", "--config", config(text)])
    assert code == 0
    assert json.loads(out)["reports"][0]["J"] == pytest.approx(25)


def test_report_complex_literal(capsys, config):
    text = """\
hamiltonian: {matrix: [[0, "-1j"], ["1j", 0]]}
probe: {preset: max_variance}
basis: {preset: eq11}
"""
    code, out, _ = run(capsys, ["report", "--config", config(text)])
    assert code == 0
    assert json.loads(out)["reports"][0]["J"] == pytest.approx(4)


@pytest.mark.parametrize("override,field", [
    ("probe={amplitudes: [1, 0, 0]}", "probe.amplitudes"),
    ("probe.preset=bogus", "probe.preset"),
    ("basis.preset=jx_eigenbasis", "basis.preset"),
    ("hamiltonian.preset=spin_jq", "hamiltonian"),
    ("theta=abc", "theta"),
])
def test_report_config_errors(capsys, config, override, field):
    code, _, err = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT), "--set", override])
    assert code == 2
    assert field in err


def test_yaml_error_reports_line(capsys, config):
    code, _, err = run(capsys, ["report", "--config", config("hamiltonian: [\n  x: :\n")])
    assert code == 2
    assert "line" in err


def test_missing_config_file(capsys, tmp_path):
    code, _, _ = run(capsys, ["report", "--config", str(tmp_path / "nope.yaml")])
    assert code == 2


def test_flag_overrides_file(capsys, config):
    code, out, _ = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT), "--theta", "1.25",
                                "--set", "theta=0.1"])
    assert code == 0
    assert json.loads(out)["reports"][0]["theta"] == 1.25


def test_consistency_failure_exit_code(capsys, config, monkeypatch):
    def broken(*args, **kwargs):
        raise ConsistencyFailure("routes disagree")
    monkeypatch.setattr(cli, "report", broken)
    code, _, err = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT)])
    assert code == 3
    assert "consistency" in err


def test_crb_optimal_qubit(capsys, config):
    code, out, _ = run(capsys, ["crb", "--config", config(OPTIMAL_QUBIT), "--seed", "2024"])
    assert code == 0
    doc = json.loads(out)
    validate("crb", doc)
    assert 0.9 <= doc["ratio"] <= 1.3
    assert doc["crb"] == pytest.approx(2.5e-5)
    assert sum(doc["histogram"]["counts"]) == doc["trials"] == 400
    assert doc["estimates_summary"]["edge_margin"] >= 5


def test_crb_eigenbasis_exit_four(capsys, config):
    code, _, _ = run(capsys, ["crb", "--config", config(OPTIMAL_QUBIT),
                              "--set", "basis.preset=eigenbasis"])
    assert code == 4


def test_crb_repeat_byte_identical(capsys, config):
    path = config(OPTIMAL_QUBIT)
    argv = ["crb", "--config", path, "--seed", "9", "-N", "2000", "-T", "40"]
    outs = [run(capsys, argv + ["--threads", str(n)])[1] for n in (1, 1, 4)]
    assert outs[0] == outs[1] == outs[2]


@pytest.mark.parametrize("flag,value", [("-N", "0"), ("-T", "1"), ("--seed", "-1")])
def test_crb_bad_parameters(capsys, config, flag, value):
    code, _, _ = run(capsys, ["crb", "--config", config(OPTIMAL_QUBIT), flag, value])
    assert code == 2


STABILITY = """\
hamiltonian: {preset: pauli_z}
probe: {preset: max_variance}
basis: {preset: eq11}
theta: 0.3
drift:
  generator: {preset: pauli_z, scale: 0.5}
  omega: 0.0
"""


def test_stability_certified(capsys, config):
    code, out, _ = run(capsys, ["stability", "--config", config(STABILITY)])
    assert code == 0
    doc = json.loads(out)
    validate("stability", doc)
    rep = doc["report"]
    assert rep["status"] == "gm" and rep["gm_conditions_hold"] is True
    assert rep["analytic_mixed"] == 0


def test_stability_misaligned_drift_certified(capsys, config):
    text = STABILITY.replace("{preset: pauli_z, scale: 0.5}", "{preset: pauli_y, scale: 0.5}")
    code, out, _ = run(capsys, ["stability", "--config", config(text)])
    assert code == 0
    rep = json.loads(out)["report"]
    assert rep["status"] == "gm"
    assert rep["analytic_mixed"] == pytest.approx(rep["d2_mixed"], abs=1e-4)


def test_stability_uncertified(capsys, config):
    text = STABILITY.replace("{preset: eq11}", "{vectors: [[1, 0.3], [-0.3, 1]], normalize: true}")
    code, out, _ = run(capsys, ["stability", "--config", config(text)])
    assert code == 0
    doc = json.loads(out)
    validate("stability", doc)
    assert doc["report"]["status"] == "not gm"
    assert doc["report"]["gm_conditions_hold"] is None


def test_stability_zero_generator(capsys, config):
    text = STABILITY.replace("{preset: pauli_z, scale: 0.5}", "{preset: zero, dim: 2}")
    code, out, _ = run(capsys, ["stability", "--config", config(text), "--omega", "0.4"])
    assert code == 0
    rep = json.loads(out)["report"]
    for key in ("grad_omega", "d2_omega", "d2_mixed", "analytic_mixed", "analytic_omega",
                "exact_d2_omega", "exact_mixed"):
        assert rep[key] == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("override", ["drift.generator.dim=3", "step=1e-12", "drift=null"])
def test_stability_config_errors(capsys, config, override):
    text = STABILITY.replace("{preset: pauli_z, scale: 0.5}", "{preset: zero, dim: 2}")
    code, _, _ = run(capsys, ["stability", "--config", config(text), "--set", override])
    assert code == 2


def test_scan_default_grid(capsys, config, tmp_path):
    out_path = tmp_path / "j32.csv"
    code, _, _ = run(capsys, ["scan", "--config", config(SPIN_SCAN), "-o", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "omega_y,omega_z,J,classification"
    assert len(lines) - 1 == 181 * 361
    side = json.loads((tmp_path / "j32.csv.json").read_text())
    validate("scan", side)
    assert side["hotspot_count"] == 6
    assert side["J_max"] == pytest.approx(9, abs=1e-8)
    # omega_y-major ascending
    first = [tuple(map(float, ln.split(",")[:2])) for ln in lines[1:363]]
    assert first[0] == (0.0, 0.0) and first[361][0] > 0 and first[360][0] == 0.0


def test_scan_minimal_grid(capsys, config):
    code, out, err = run(capsys, ["scan", "--config", config(SPIN_SCAN), "--grid", "2", "2"])
    assert code == 0
    rows = out.splitlines()[1:]
    assert len(rows) == 4
    assert [r.split(",")[:2] for r in rows] == [
        ["0", "0"], ["0", "3.14159265359"], ["3.14159265359", "0"],
        ["3.14159265359", "3.14159265359"],
    ]
    validate("scan", json.loads(err))


def test_scan_spin_half_note(capsys, config):
    code, _, err = run(capsys, ["scan", "--config", config(SPIN_SCAN), "--grid", "5", "9",
                                "--set", "hamiltonian.j=1/2"])
    assert code == 0
    side = json.loads(err)
    assert side["supra_classical_exists"] is False
    assert "no supra-classical region" in side["note"]


@pytest.mark.parametrize("grid", [["1", "5"], ["5", "0"]])
def test_scan_invalid_grid(capsys, config, grid):
    code, _, _ = run(capsys, ["scan", "--config", config(SPIN_SCAN), "--grid", *grid])
    assert code == 2


def test_scan_needs_spin_preset(capsys, config):
    code, _, _ = run(capsys, ["scan", "--config", config(OPTIMAL_QUBIT), "--grid", "3", "3"])
    assert code == 2


def test_scan_thread_independent(capsys, config, tmp_path):
    path = config(SPIN_SCAN)
    outs = []
    for n in (1, 3):
        target = tmp_path / f"t{n}.csv"
        run(capsys, ["scan", "--config", path, "--grid", "19", "37", "--threads", str(n),
                     "-o", str(target)])
        outs.append((target.read_bytes(), (tmp_path / f"t{n}.csv.json").read_bytes()))
    assert outs[0] == outs[1]


def test_negative_threads_rejected(capsys, config):
    code, _, _ = run(capsys, ["report", "--config", config(OPTIMAL_QUBIT), "--threads", "-1"])
    assert code == 2


def test_env_threads_ignored_when_invalid(capsys, config, monkeypatch):
    monkeypatch.setenv("QMETRICS_THREADS", "lots")
    code, _, _ = run(capsys, ["crb", "--config", config(OPTIMAL_QUBIT), "-N", "100", "-T", "4"])
    assert code == 0


def test_schemas_are_valid_documents():
    for name in ("report", "scan", "stability", "crb"):
        jsonschema.Draft202012Validator.check_schema(cli.load_schema(name))

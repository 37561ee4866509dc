"""Command-line front end: output formats and exit codes."""
import json

import pytest

import cli
from services.errors import NonStabilizedError
from services.settings import reset_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ("z0_CT", "z1_CT", "w0_A", "w1_A", "w2_A", "w0_B", "w1_B", "d1z1_B"):
        assert name in out

    code, out, _ = run(capsys, "catalog", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 8

    code, out, _ = run(capsys, "catalog", "w1_A", "--format", "json")
    (module,) = json.loads(out)
    assert module["parity"] == "even"
    assert module["algebra"] == "A"


def test_table_A(capsys):
    code, out, _ = run(capsys, "table", "A", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["matrix"] == [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert payload["window"] == 32

    code, out, _ = run(capsys, "table", "A", "--window", "16", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines() == [
        "module,[1],[P1],[P2]",
        "w0_A,1,1,1",
        "w1_A,0,1,0",
        "w2_A,0,0,1",
    ]


def test_table_B(capsys):
    code, out, _ = run(capsys, "table", "B", "--format", "json")
    assert code == 0
    assert json.loads(out)["matrix"] == [[1, None, None], [None, 1, 0]]


def test_table_text_mentions_stabilization(capsys):
    code, out, _ = run(capsys, "table", "CT")
    assert code == 0
    assert "stabilized" in out
    assert "NOT" not in out


def test_index(capsys):
    for module, unitary, expected in (("z1_CT", "U", 1), ("w1_B", "V", 1), ("w1_B", "U", 0)):
        code, out, _ = run(capsys, "index", module, unitary, "--format", "json")
        assert code == 0
        assert json.loads(out)["value"] == expected


def test_pair(capsys):
    code, out, _ = run(capsys, "pair", "w1_A", "P1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == 1
    assert payload["degrees"] == [1, 2]

    element = json.dumps({"group": "dihedral",
                          "terms": [{"elem": [0, 0], "re": "1/2"}, {"elem": [1, 1], "re": "1/2"}]})
    code, out, _ = run(capsys, "pair", "w2_A", element, "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == 1

    code, out, _ = run(capsys, "pair", "w1_B", "V", "--format", "json")
    assert json.loads(out)["kernel_dims"] == [1, 0]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "pair", "w1_A", "X")
    assert code == 2
    assert "unknown element" in err
    code, _, _ = run(capsys, "pair", "d1z1_B", "1")
    assert code == 2
    code, _, err = run(capsys, "table", "A", "--window", "4")
    assert code == 2
    assert "invalid configuration" in err
    code, _, _ = run(capsys, "table", "A", "--degree", "1")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["cyclic", "verify-7"])
    assert exc.value.code == 2


def test_non_stabilized_exit_code(capsys, monkeypatch):
    def unstable(*args, **kwargs):
        raise NonStabilizedError("values did not stabilize", values=["1", "2"])

    monkeypatch.setattr(cli, "pairing_table", unstable)
    code, _, err = run(capsys, "table", "A")
    assert code == 3
    assert "did not stabilize" in err


def test_verify_and_homotopy(capsys):
    code, out, _ = run(capsys, "verify", "w0_A", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "homotopy", "--window", "12", "--t-grid", "0,1/2,1", "--format", "json")
    assert code == 0
    checks = [c["check"] for c in json.loads(out)["checks"]]
    assert "t=1/2: involution" in checks


def test_cyclic(capsys):
    code, out, _ = run(capsys, "cyclic", "duality", "--format", "json")
    assert code == 0
    assert json.loads(out)["matrix"] == [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"], ["0/1", "0/1", "1/1"]]

    code, out, _ = run(capsys, "cyclic", "solve-2", "--k", "3")
    assert code == 0
    assert "S psi_3" in out

    code, out, _ = run(capsys, "cyclic", "solve-1", "--seed", "7", "--count", "20", "--format", "json")
    assert code == 0
    assert json.loads(out)["summary"] == "20/20"

    code, _, _ = run(capsys, "cyclic", "solve-1", "--bound", "4")
    assert code == 2


def test_cyclic_json_is_reproducible(capsys):
    _, first, _ = run(capsys, "cyclic", "verify-1", "--seed", "5", "--count", "3", "--bound", "4", "--format", "json")
    _, again, _ = run(capsys, "cyclic", "verify-1", "--seed", "5", "--count", "3", "--bound", "4", "--format", "json")
    assert first == again


def test_out_file(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "table", "CT", "--format", "csv", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("module,[1],[U]")


def test_default_window_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("NCG_DEFAULT_WINDOW", "20")
    reset_settings()
    code, out, _ = run(capsys, "table", "A", "--format", "json")
    assert code == 0
    assert json.loads(out)["window"] == 20


def test_bad_environment_setting_is_a_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("NCG_DEFAULT_WINDOW", "abc")
    reset_settings()
    code, _, err = run(capsys, "table", "A")
    assert code == 2
    assert "invalid configuration" in err


def test_bad_log_level_is_a_usage_error(capsys):
    code, _, err = run(capsys, "--log-level", "FOO", "catalog")
    assert code == 2
    assert "FOO" in err


def test_malformed_element_payload(capsys):
    missing_elem = json.dumps({"group": "dihedral", "terms": [{"re": "1/2"}]})
    code, _, err = run(capsys, "pair", "w1_A", missing_elem)
    assert code == 2
    assert "elem" in err
    code, _, _ = run(capsys, "pair", "w1_A", '{"terms": []}')
    assert code == 2

import csv
import io
import json

import numpy as np
import pytest

from hamshallow import cli
from hamshallow.composer import Atom


@pytest.fixture
def files(tmp_path):
    hz = tmp_path / "hz.json"
    hz.write_text(json.dumps({"terms": [{"pauli": "Z", "coeff": 1.0}]}))
    h2 = tmp_path / "h2.json"
    h2.write_text(json.dumps({"terms": [
        {"pauli": "XI", "coeff": 0.5}, {"pauli": "ZZ", "coeff": -0.7}, {"pauli": "IZ", "coeff": 0.3},
    ]}))
    h4 = tmp_path / "h4.json"
    h4.write_text(json.dumps({"terms": [
        {"pauli": p, "coeff": 1.0} for p in ("ZZI", "XXI", "IYY", "IZX")
    ]}))
    spec = tmp_path / "F.json"
    spec.write_text(json.dumps({"op": "lincomb", "children": [
        {"coef": 0.5, "atom": {"family": "exp", "param": 2.0}},
        {"coef": 0.3, "atom": {"family": "monomial", "basis": "laurent-cos", "n": 40}},
    ]}))
    return {"hz": str(hz), "h2": str(h2), "h4": str(h4), "F": str(spec), "dir": tmp_path}


def _run(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGrammar:
    def test_atom(self):
        assert cli.parse_atom("monomial:n=100") == Atom("monomial", 100)
        assert cli.parse_atom("cospow:n=20") == Atom("monomial", 20, "laurent-cos")
        assert cli.parse_atom("exp:beta=2,basis=laurent-sin") == Atom("exp", 2.0, "laurent-sin")
        assert cli.parse_atom("erfsin:lambda=3") == Atom("erf", 3.0, "laurent-sin")

    @pytest.mark.parametrize("bad", ["nope:n=1", "monomial", "monomial:k=3", "exp:beta=x", "monomial:n=3,foo=1"])
    def test_bad_atom(self, bad):
        with pytest.raises(Exception):
            cli.parse_atom(bad)

    def test_grid(self):
        assert cli.parse_grid("16..1024", integer=True) == [16, 32, 64, 128, 256, 512, 1024]
        assert cli.parse_grid("1e-1,1e-2") == [0.1, 0.01]
        assert cli.parse_grid("0.5..4") == [0.5, 1.0, 2.0, 4.0]

    def test_trotter(self):
        assert cli.parse_trotter(None) == "exact"
        assert cli.parse_trotter("auto") == ("trotter", 2, None)
        assert cli.parse_trotter("1,8") == ("trotter", 1, 8)
        assert cli.parse_trotter("3,auto") == ("trotter", 3, None)


class TestCommands:
    def test_approx(self, capsys):
        code, out, _ = _run(capsys, ["approx", "--function", "monomial:n=2", "--delta", "3.0"])
        assert code == 0
        doc = json.loads(out)
        assert doc["poly"]["coeffs"] == [0.5]
        assert doc["report"]["guaranteed_bound"] == 2.0

    def test_approx_file_and_phases(self, capsys, files):
        out_file = files["dir"] / "c.json"
        assert cli.run(["approx", "--function", "cospow:n=20", "--delta", "1e-2", "--out", str(out_file)]) == 0
        code, out, _ = _run(capsys, ["phases", "--target", str(out_file)])
        assert code == 0
        assert json.loads(out)["kind"] == "gqsp-laurent"

    def test_phases_mixed_chebyshev(self, capsys, files):
        t = files["dir"] / "t.json"
        t.write_text(json.dumps({"kind": "chebyshev", "degree": 1, "coeffs": [0.3, 0.4]}))
        code, out, _ = _run(capsys, ["phases", "--target", str(t), "--tol", "1e-12"])
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "synthesis" and len(doc["components"]) == 2

    def test_compose(self, capsys, files):
        code, out, _ = _run(capsys, ["compose", "--spec", files["F"], "--delta", "1e-2"])
        doc = json.loads(out)
        assert code == 0
        assert doc["report"]["measured_sup_error"] <= 1e-2
        assert doc["approximation"]["kind"] == "mixed"

    def test_simulate_pass(self, capsys, files):
        code, out, _ = _run(capsys, ["simulate", "--spec", "monomial:n=1", "--hamiltonian", files["hz"], "--delta", "1e-2"])
        assert code == 0 and json.loads(out)["pass"] is True

    def test_simulate_trotter(self, capsys, files):
        code, out, _ = _run(capsys, ["simulate", "--spec", "cospow:n=20", "--hamiltonian", files["h2"],
                                     "--delta", "1e-2", "--pipeline", "gqsp", "--trotter", "auto"])
        doc = json.loads(out)
        assert code == 0 and doc["pipeline"] == "gqsp-trotter"

    def test_simulate_mixed(self, capsys, files):
        code, out, _ = _run(capsys, ["simulate", "--spec", files["F"], "--hamiltonian", files["h2"], "--delta", "1e-2"])
        assert code == 0 and json.loads(out)["pipeline"] == "mixed"

    def test_simulate_fail_exit3(self, capsys, files, monkeypatch):
        from hamshallow import simulator

        monkeypatch.setattr(simulator, "BUDGET_SLACK", -1.0)
        code, _, _ = _run(capsys, ["simulate", "--spec", "monomial:n=1", "--hamiltonian", files["hz"], "--delta", "1e-2"])
        assert code == 3

    def test_depth(self, capsys, files):
        code, out, _ = _run(capsys, ["depth", "--spec", "monomial:n=100", "--hamiltonian", files["h4"], "--delta", "1e-3", "--order", "2"])
        assert code == 0 and "1600" in out and "624" in out
        code, out, _ = _run(capsys, ["depth", "--spec", "monomial:n=100", "--hamiltonian", files["h4"], "--delta", "1e-3", "--json"])
        assert json.loads(out)["depth_approx"] == 624

    def test_sweep(self, capsys, files):
        path = files["dir"] / "sweep.csv"
        code = cli.run(["sweep", "--family", "monomial", "--param-grid", "16..1024", "--delta-grid", "1e-3",
                        "--out", str(path), "--workers", "3"])
        assert code == 0
        rows = list(csv.DictReader(path.open()))
        assert list(rows[0]) == list(cli.SWEEP_COLUMNS)
        assert [int(r["param"]) for r in rows] == [16, 32, 64, 128, 256, 512, 1024]
        for r in rows:
            assert float(r["measured_error"]) <= min(float(r["delta"]), float(r["bound"]))
        n = np.array([float(r["param"]) for r in rows])
        d = np.array([float(r["approx_degree"]) for r in rows])
        slope = np.polyfit(np.log(n), np.log(d), 1)[0]
        assert 0.45 <= slope <= 0.60

    def test_sweep_laurent_stdout(self, capsys):
        code, out, _ = _run(capsys, ["sweep", "--family", "gausssin", "--param-grid", "0.5,2", "--delta-grid", "1e-1,1e-2"])
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 4
        assert all(float(r["measured_error"]) <= float(r["delta"]) for r in rows)


class TestErrors:
    def test_validation_exit1(self, capsys):
        code, _, err = _run(capsys, ["approx", "--function", "bogus:n=1", "--delta", "0.1"])
        assert code == 1 and json.loads(err)["error"] == "validation"

    def test_usage_exit1(self, capsys):
        code, _, err = _run(capsys, ["approx"])
        assert code == 1 and json.loads(err)["error"] == "usage"

    def test_missing_file(self, capsys):
        code, _, err = _run(capsys, ["compose", "--spec", "/nonexistent/spec.json", "--delta", "0.1"])
        assert code == 1 and "message" in json.loads(err)

    def test_solver_exit2(self, capsys, files):
        t = files["dir"] / "t.json"
        t.write_text(json.dumps({"kind": "chebyshev", "degree": 3, "coeffs": [0, 0.5, 0, 0.3]}))
        code, _, err = _run(capsys, ["phases", "--target", str(t), "--tol", "1e-30"])
        assert code == 2 and json.loads(err)["error"] == "solver"

    def test_deterministic(self, capsys, files):
        argv = ["compose", "--spec", files["F"], "--delta", "1e-2"]
        _, a, _ = _run(capsys, argv)
        _, b, _ = _run(capsys, argv)
        assert a == b

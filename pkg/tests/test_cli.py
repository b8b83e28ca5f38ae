import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from graphenergy.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    @pytest.mark.parametrize("name", ["p3", "k2"])
    def test_golden(self, capsys, name):
        code, out, _ = run(capsys, "compute", "--graph", str(GOLDEN / f"{name}.json"))
        assert code == 0
        assert out == (GOLDEN / f"compute_{name}.txt").read_text()

    def test_values(self, capsys):
        _, out, _ = run(capsys, "compute", "--graph", str(GOLDEN / "p3.json"))
        rec = dict(line.split(": ") for line in out.splitlines())
        assert float(rec["graph_energy"]) == pytest.approx(2.828427, abs=1e-6)
        assert float(rec["laplacian_energy"]) == pytest.approx(3.333333, abs=1e-6)
        assert rec["laplacian_energy"] == rec["laplacian_energy_matrix"]

    def test_json_and_weight_override(self, capsys):
        code, out, _ = run(capsys, "compute", "--graph", str(GOLDEN / "p3.json"),
                           "--weight", "const:2", "--format", "json")
        rec = json.loads(out)
        assert code == 0 and rec["omega_regular"] and rec["weight_regime"] == "const"
        assert rec["laplacian_energy"] == pytest.approx(rec["graph_energy"], abs=1e-10)

    @pytest.mark.parametrize("name", ["malformed", "bad_weight", "missing"])
    def test_bad_file_exit_2(self, capsys, name):
        code, _, err = run(capsys, "compute", "--graph", str(GOLDEN / f"{name}.json"))
        assert code == 2
        assert "invalid graph" in err

    def test_field_in_message(self, capsys):
        _, _, err = run(capsys, "compute", "--graph", str(GOLDEN / "bad_weight.json"))
        assert "weights[1]" in err

    def test_bad_weight_flag(self, capsys):
        code, _, _ = run(capsys, "compute", "--graph", str(GOLDEN / "p3.json"), "--weight", "x")
        assert code == 1

    def test_solver_failure_exit_3(self, capsys, monkeypatch):
        import graphenergy.linalg as linalg
        monkeypatch.setattr(linalg, "MAX_SWEEPS", 0)
        code, _, _ = run(capsys, "compute", "--graph", str(GOLDEN / "p3.json"))
        assert code == 3


class TestSpectrum:
    @pytest.mark.parametrize("name,matrix", [
        ("p3", "laplacian"), ("k2", "adjacency"), ("empty4", "adjacency")])
    def test_golden(self, capsys, name, matrix):
        code, out, _ = run(capsys, "spectrum", "--graph", str(GOLDEN / f"{name}.json"),
                           "--matrix", matrix)
        assert code == 0
        assert out == (GOLDEN / f"spectrum_{name}_{matrix}.txt").read_text()

    def test_signless_bipartite_matches_laplacian(self, capsys):
        _, a, _ = run(capsys, "spectrum", "--graph", str(GOLDEN / "p3.json"), "--matrix", "signless")
        assert a == (GOLDEN / "spectrum_p3_laplacian.txt").read_text()


def _csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


class TestVerify:
    def test_cycle_golden(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        code, _, _ = run(capsys, "verify", "--family", "cycle", "--n", "6", "--weight", "degree",
                         "--trials", "1", "--format", "csv", "--out", str(out))
        assert code == 0
        got, want = _csv_rows(out.read_text()), _csv_rows((GOLDEN / "verify_cycle6.csv").read_text())
        assert [r[:6] for r in got] == [r[:6] for r in want]
        for g, w in zip(got[1:], want[1:]):
            assert float(g[6]) == pytest.approx(float(w[6]), abs=1e-12)
        row = {r[0]: r for r in got}["bipartite_lower"]
        assert row[4] == "1"

    def test_gnp_golden(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, stdout, _ = run(capsys, "verify", "--family", "gnp", "--n", "8", "--p", "0.5",
                              "--weight", "degree", "--trials", "20", "--seed", "42",
                              "--out", str(out))
        assert code == 0 and "violations=0" in stdout
        got, want = json.loads(out.read_text()), json.loads((GOLDEN / "verify_gnp8.json").read_text())
        assert got["config"] == want["config"] and got["offending"] == want["offending"]
        for name, t in want["theorems"].items():
            for key, value in t.items():
                if isinstance(value, float):
                    assert got["theorems"][name][key] == pytest.approx(value, abs=1e-12)
                else:
                    assert got["theorems"][name][key] == value

    def test_spec_example_200_trials(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "verify", "--family", "gnp", "--n", "8", "--p", "0.5",
                         "--weight", "degree", "--trials", "200", "--seed", "42", "--out", str(out))
        assert code == 0
        assert json.loads(out.read_text())["ok"] is True

    def test_byte_identical(self, capsys, tmp_path):
        args = ["verify", "--family", "union", "--n", "2", "--n-max", "5", "--p", "0.6",
                "--weight", "uniform:0.5:3", "--trials", "30", "--seed", "11"]
        for fmt in ("json", "csv"):
            a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
            assert main(args + ["--format", fmt, "--out", str(a)]) == 0
            assert main(args + ["--format", fmt, "--out", str(b)]) == 0
            assert a.read_bytes() == b.read_bytes()
        capsys.readouterr()

    def test_missing_family_exit_1(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["verify", "--n", "8"])
        assert info.value.code == 1

    def test_missing_n_exit_1(self, capsys):
        code, _, err = run(capsys, "verify", "--family", "gnp", "--p", "0.5")
        assert code == 1 and "--n" in err

    def test_failure_exit_4(self, capsys, monkeypatch, tmp_path):
        import graphenergy.sweep as sweep
        from graphenergy.theorems import BoundReport
        monkeypatch.setattr(sweep, "check_md_bound",
                            lambda g, tol: BoundReport("md_upper", 1.0, 0.0, -1.0, False, "violated"))
        code, _, _ = run(capsys, "verify", "--family", "path", "--n", "3",
                         "--out", str(tmp_path / "r.json"))
        assert code == 4

    def test_input_dir(self, capsys, tmp_path):
        for name in ("p3", "k2", "empty4"):
            (tmp_path / f"{name}.json").write_text((GOLDEN / f"{name}.json").read_text())
        code, out, _ = run(capsys, "verify", "--input-dir", str(tmp_path), "--format", "csv")
        assert code == 0
        rows = {r[0]: r for r in _csv_rows(out.split("verify:")[0])}
        assert rows["md_upper"][1] == "3"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graphenergy", "spectrum", "--graph",
                           str(GOLDEN / "k2.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n-1\n"

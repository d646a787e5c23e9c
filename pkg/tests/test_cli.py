import json

import numpy as np
import pytest

from trideck.cli import (EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success(self, capsys):
        code, out, err = run(capsys, "deck", "--n", "5", "--set", "0,1",
                             "--k", "2")
        assert code == EXIT_OK
        assert json.loads(out)["values"] == [2, 1, 0, 0, 1]
        assert "wall_time" in err  # manifest on stderr

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "gm", "--p", "2", "--q", "3", "--r", "2")
        assert code == EXIT_DOMAIN and "r must be >= 3" in err

    def test_budget_error(self, capsys, monkeypatch):
        monkeypatch.setenv("TRIDECK_BUDGET", "10")
        code, _, err = run(capsys, "sweep", "--n", "7", "--k", "3")
        assert code == EXIT_BUDGET and "budget" in err

    def test_usage_error(self, capsys):
        assert run(capsys, "frobnicate")[0] == EXIT_USAGE
        assert run(capsys)[0] == EXIT_USAGE
        assert run(capsys, "deck", "--bogus-flag")[0] == EXIT_USAGE


class TestSubcommands:
    def test_deck_rational_values(self, capsys):
        code, out, _ = run(capsys, "deck", "--values", "1/2,1/2", "--k", "2")
        assert code == EXIT_OK
        assert json.loads(out)["values"] == ["1/2", "1/2"]

    def test_deck_csv(self, capsys):
        code, out, _ = run(capsys, "deck", "--n", "3", "--values", "2,1,0",
                           "--format", "csv")
        assert code == EXIT_OK
        assert out.startswith("# n=3,k=3")

    def test_zeros_and_classify(self, capsys):
        code, out, _ = run(capsys, "zeros", "--n", "9", "--set", "0,1,2")
        assert code == EXIT_OK and json.loads(out)["zeros"] == [3, 6]
        code, out, _ = run(capsys, "classify", "--n", "9", "--set", "0,1,2")
        assert json.loads(out)["case"] == "PrimePowerGapCase"

    def test_reconstruct(self, capsys):
        code, out, _ = run(capsys, "reconstruct", "--n", "3",
                           "--values", "2,1,0")
        rep = json.loads(out)
        assert code == EXIT_OK
        assert rep["uniqueness"]["kind"] == "UniqueUpToTranslation"

    def test_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "--n", "7", "--k", "3")
        assert code == EXIT_OK
        assert json.loads(out)["ambiguous_classes"] == []

    def test_gm_and_allk(self, capsys):
        code, out, _ = run(capsys, "gm", "--p", "2", "--q", "3", "--r", "3")
        pair = json.loads(out)
        assert code == EXIT_OK and pair["n"] == 18
        code, out, _ = run(capsys, "allk", "--n", "18",
                           "--set", ",".join(map(str, pair["E"])),
                           "--other", ",".join(map(str, pair["F"])),
                           "--kmax", "4")
        assert json.loads(out)["first_differing_k"] == 4

    def test_survey_deterministic(self, capsys):
        args = ("survey", "--n", "26", "--samples", "1000", "--seed", "3",
                "--mode", "sampled")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_intervals(self, capsys, tmp_path):
        spec = json.dumps({"intervals": [["0", "1"], ["3/2", "2"]]})
        code, out, _ = run(capsys, "intervals", "deck", "--set", spec,
                           "--x", "1/4", "--y", "1/2")
        assert code == EXIT_OK and json.loads(out)["N"] == "1/2"
        p = tmp_path / "set.json"
        p.write_text(spec)
        code, out, _ = run(capsys, "intervals", "gaps", "--set", str(p))
        assert json.loads(out)["min_gap"] == "1/2"
        code, out, _ = run(capsys, "intervals", "ddx", "--set", spec,
                           "--x=-1/4", "--y", "1/8")
        assert json.loads(out)["ddx"] == 2
        code, out, _ = run(capsys, "intervals", "translate", "--set", spec,
                           "--other", spec)
        assert json.loads(out)["shift"] == "0"

    def test_rline_cospair(self, capsys):
        code, out, _ = run(capsys, "rline", "cospair", "--k", "3",
                           "--h", "1/64", "--half-width", "16",
                           "--tail-tol", "0.05", "--stride", "16")
        res = json.loads(out)
        assert code == EXIT_OK
        assert res["deck_rel_error"] < 1e-6
        assert res["shift_scan_distance"] > 0.05

    def test_rline_stability(self, capsys, tmp_path):
        import trideck as td
        g = td.SampledFunction(1 / 64, 0.0, np.ones(64))
        p = str(tmp_path / "g.csv")
        g.save_csv(p)
        code, out, _ = run(capsys, "rline", "stability", "--in", p)
        assert code == EXIT_OK and json.loads(out)["is_indicator_like"]

    def test_rline_norms(self, capsys):
        code, out, _ = run(capsys, "rline", "norms", "--suite", "default",
                           "--seed", "7", "--draws", "10")
        assert code == EXIT_OK and json.loads(out)["violations"] == 0

    def test_rline_continuity(self, capsys):
        code, out, _ = run(capsys, "rline", "continuity", "--k", "2",
                           "--radii", "0.1,0.05")
        res = json.loads(out)
        assert code == EXIT_OK
        assert res["deviations"][0][1] == pytest.approx(0.1, abs=2 / 256)


class TestArtifacts:
    def test_out_writes_result_and_manifest(self, capsys, tmp_path):
        out_path = str(tmp_path / "deck.json")
        code, _, _ = run(capsys, "deck", "--n", "5", "--set", "0,1",
                         "--k", "2", "--out", out_path)
        assert code == EXIT_OK
        assert json.load(open(out_path))["values"] == [2, 1, 0, 0, 1]
        manifest = json.load(open(out_path + ".manifest.json"))
        assert manifest["command"] == "deck"
        assert manifest["output_paths"] == [out_path]
        assert "trideck" in manifest["versions"]

"""End-to-end coverage of the ssftrace command-line interface."""

import csv
import json

import numpy as np
import pytest

from ssftrace import cli, linops, serialize, ssf


def run(argv):
    return cli.main(argv)


def gen_pair(tmp_path, seed=11, dim=4, delta=0.25):
    out = tmp_path / f"pair{seed}"
    assert run(["gen", "--dim", str(dim), "--delta", str(delta),
                "--seed", str(seed), "--out", str(out)]) == 0
    return out


class TestGen:
    def test_outputs_exist(self, tmp_path):
        out = gen_pair(tmp_path)
        for name in ("T.json", "T0.json", "manifest.json"):
            assert (out / name).is_file()

    def test_byte_identical_reruns(self, tmp_path):
        a = gen_pair(tmp_path, seed=42)
        b = tmp_path / "again"
        run(["gen", "--dim", "4", "--delta", "0.25", "--seed", "42",
             "--out", str(b)])
        for name in ("T.json", "T0.json", "manifest.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_manifest_certificates_match_pair(self, tmp_path):
        out = gen_pair(tmp_path, seed=7)
        manifest = json.loads((out / "manifest.json").read_text())
        pair = linops.make_pair(serialize.load_matrix(out / "T.json"),
                                serialize.load_matrix(out / "T0.json"))
        c0 = manifest["certificates"]["T0"]
        assert c0["is_strict"] is True
        assert c0["operator_norm"] == pytest.approx(
            pair.cert_T0.operator_norm, abs=1e-12)
        assert c0["strictness_margin_delta"] >= 0.25 - 1e-9


class TestVerify:
    def test_all_suites_pass(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=3)
        out = tmp_path / "verify"
        code = run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"),
                    "--suite", "all", "--n-max", "48", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["passed"] is True
        assert summary["failures"] == []
        with open(out / "report.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["name", "passed", "measured", "threshold"]
        assert len(rows) - 1 == summary["num_checks"]
        prefixes = {r[0].split("/")[0] for r in rows[1:]}
        assert prefixes == {"lemma", "dilation", "circle", "disc"}

    def test_single_suite(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=5)
        out = tmp_path / "verify-lemma"
        code = run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"),
                    "--suite", "lemma", "--out", str(out)])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert all(c["name"].startswith("lemma/") for c in summary["checks"])

    def test_non_contraction_is_load_failure(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        ok = tmp_path / "ok.json"
        serialize.save_matrix(bad, 1.5 * np.eye(2))
        serialize.save_matrix(ok, 0.5 * np.eye(2))
        out = tmp_path / "verify-bad"
        code = run(["verify", "--t", str(bad), "--t0", str(ok),
                    "--out", str(out)])
        assert code == 1
        summary = json.loads((out / "summary.json").read_text())
        assert summary["passed"] is False
        assert any("NotAContraction" in f for f in summary["failures"])
        printed = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert printed["passed"] is False

    def test_corrupt_matrix_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"rows": 2, "cols": 2, "data": [[1.0, 0.0]]}))
        ok = tmp_path / "ok.json"
        serialize.save_matrix(ok, 0.5 * np.eye(2))
        out = tmp_path / "verify-corrupt"
        assert run(["verify", "--t", str(bad), "--t0", str(ok),
                    "--out", str(out)]) == 1

    def test_tolerance_override_can_fail(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=9)
        out = tmp_path / "verify-tight"
        code = run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--suite", "circle",
                    "--n-max", "48", "--tol", "circle_tol=1e-30",
                    "--out", str(out)])
        assert code == 1

    def test_unknown_tolerance_rejected(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=9)
        code = run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"),
                    "--tol", "nope=1", "--out", str(tmp_path / "x")])
        assert code == 2

    def test_thread_cap_env(self, tmp_path, monkeypatch):
        pair_dir = gen_pair(tmp_path, seed=13)
        monkeypatch.setenv("SSF_DISC_THREADS", "2")
        out = tmp_path / "verify-threads"
        assert run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--suite", "lemma",
                    "--out", str(out)]) == 0
        monkeypatch.setenv("SSF_DISC_THREADS", "0")
        assert run(["verify", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--suite", "lemma",
                    "--out", str(tmp_path / "verify-threads0")]) == 1


class TestSsfCommand:
    def test_matches_in_process(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=21)
        out = tmp_path / "ssf"
        assert run(["ssf", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--n-max", "32",
                    "--grid", "64", "--out", str(out)]) == 0
        pair = linops.make_pair(serialize.load_matrix(pair_dir / "T.json"),
                                serialize.load_matrix(pair_dir / "T0.json"))
        table = ssf.ssf_from_moments(ssf.moments(pair, 32))
        t_grid = 2.0 * np.pi * np.arange(64) / 64
        expected = ssf.evaluate_ssf_grid(table, t_grid, 0.99)
        with open(out / "ssf.csv", newline="") as fh:
            rows = list(csv.reader(fh))[1:]
        got = np.array([float(r[1]) for r in rows])
        np.testing.assert_array_equal(got, expected)
        back = serialize.ssf_from_dict(
            json.loads((out / "ssf_coeffs.json").read_text()))
        np.testing.assert_allclose(back.coeffs, table.coeffs, atol=1e-15)

    def test_load_error(self, tmp_path):
        missingish = tmp_path / "bad.json"
        missingish.write_text("{}")
        ok = tmp_path / "ok.json"
        serialize.save_matrix(ok, 0.5 * np.eye(2))
        assert run(["ssf", "--t", str(missingish), "--t0", str(ok),
                    "--out", str(tmp_path / "s")]) == 1


class TestDiscReport:
    def test_default_table(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=31)
        out = tmp_path / "disc"
        assert run(["disc-report", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--n-max", "32",
                    "--radii", "0.5", "0.9", "0.999",
                    "--out", str(out)]) == 0
        with open(out / "disc.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0][0] == "R"
        assert [float(r[0]) for r in rows[1:]] == [0.5, 0.9, 0.999]
        for r in rows[1:]:
            assert float(r[1]) == pytest.approx(float(r[3]), abs=1e-7)

    def test_custom_psi(self, tmp_path):
        pair_dir = gen_pair(tmp_path, seed=33)
        psi_path = tmp_path / "psi.json"
        psi_path.write_text(json.dumps(
            {"coeffs": [[1, 1.0, 0.0], [-1, 0.5, 0.0]]}))
        out = tmp_path / "disc-psi"
        assert run(["disc-report", "--t", str(pair_dir / "T.json"),
                    "--t0", str(pair_dir / "T0.json"), "--psi", str(psi_path),
                    "--n-max", "32", "--out", str(out)]) == 0
        assert (out / "disc.csv").is_file()

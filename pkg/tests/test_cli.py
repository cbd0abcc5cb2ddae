import json

import numpy as np
import pytest

import spectralorder as so
from spectralorder.cli import main


FIXTURE = {
    "format_version": "1",
    "dim": 2,
    "matrices": [
        {"name": "x", "re": [[1, 0], [0, 0]]},
        {"name": "y", "re": [[1.5, 0.5], [0.5, 0.5]]},
        {"name": "a", "re": [[1, 0], [0, 3]]},
        {"name": "b", "re": [[2, 0], [0, 2]]},
        {"name": "c", "re": [[1, 0], [0, 2]]},
        {"name": "d", "re": [[2, 0], [0, 3]]},
        {"name": "p", "re": [[0.5, 0.5], [0.5, 0.5]]},
    ],
}


@pytest.fixture
def fixture_path(tmp_path):
    path = tmp_path / "set.json"
    path.write_text(json.dumps(FIXTURE))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestCompare:
    def test_both_orders_hold(self, fixture_path, capsys):
        code, rep = run(capsys, "compare", "--input", fixture_path, "--names", "c,d")
        assert code == 0
        assert rep["loewner_leq"] is True
        assert rep["spectral_leq"]["holds"] is True

    def test_loewner_yes_spectral_no(self, fixture_path, capsys):
        code, rep = run(capsys, "compare", "--input", fixture_path, "--names", "x,y")
        assert code == 0
        assert rep["loewner_leq"] is True
        assert rep["spectral_leq"]["holds"] is False
        assert 0.29 < rep["spectral_leq"]["witness_lambda"] < 1.0
        assert rep["spectral_leq"]["defect"] > 0
        assert rep["monotone_probe"]["status"] == "refuted"

    def test_missing_name_exit_two(self, fixture_path, capsys):
        assert main(["compare", "--input", fixture_path, "--names", "x,nope"]) == 2

    def test_missing_file_exit_two(self, capsys):
        assert main(["compare", "--input", "/does/not/exist.json", "--names", "a,b"]) == 2

    def test_bad_json_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["compare", "--input", str(bad), "--names", "a,b"]) == 2

    def test_wrong_name_count_exit_two(self, fixture_path, capsys):
        assert main(["compare", "--input", fixture_path, "--names", "a,b,x"]) == 2


class TestLattice:
    def test_sup_document(self, fixture_path, tmp_path, capsys):
        out = tmp_path / "sup.json"
        code, rep = run(
            capsys, "lattice", "--input", fixture_path, "--names", "a,b",
            "--mode", "sup", "--output", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["format_version"] == "1"
        got = np.asarray(doc["matrices"][0]["re"])
        assert np.allclose(got, np.diag([2.0, 3.0]), atol=1e-9)
        assert rep["result_family"]["breakpoints"] == pytest.approx([2.0, 3.0])

    def test_inf_of_projection_pair_is_zero(self, fixture_path, capsys):
        code, rep = run(
            capsys, "lattice", "--input", fixture_path, "--names", "x,p", "--mode", "inf"
        )
        assert code == 0
        got = np.asarray(rep["result_document"]["matrices"][0]["re"])
        assert np.allclose(got, 0.0, atol=1e-9)

    def test_singleton_echo(self, fixture_path, capsys):
        code, rep = run(
            capsys, "lattice", "--input", fixture_path, "--names", "a", "--mode", "sup"
        )
        assert code == 0
        got = np.asarray(rep["result_document"]["matrices"][0]["re"])
        assert np.allclose(got, np.diag([1.0, 3.0]), atol=1e-10)


class TestLimits:
    def test_kato_commuting(self, fixture_path, capsys):
        code, rep = run(
            capsys, "limits", "--input", fixture_path, "--names", "a,b", "--formula", "kato"
        )
        assert code == 0
        assert rep["route_deviation"] < 1e-6
        residuals = [t["residual"] for t in rep["residual_trace"]]
        assert len(residuals) >= 2
        # commuting spectra converge monotonically
        assert all(b <= a * 1.001 + 1e-15 for a, b in zip(residuals, residuals[1:]))

    def test_orthosum_exact(self, tmp_path, capsys):
        doc = {
            "format_version": "1",
            "dim": 4,
            "matrices": [
                {"name": "u", "re": np.diag([1.0, -2.0, 0.0, 0.0]).tolist()},
                {"name": "v", "re": np.diag([0.0, 0.0, 3.0, -1.0]).tolist()},
            ],
        }
        path = tmp_path / "orth.json"
        path.write_text(json.dumps(doc))
        code, rep = run(capsys, "limits", "--input", str(path), "--formula", "orthosum")
        assert code == 0
        assert rep["route_deviation"] < 1e-8
        assert rep["residual_trace"] == []

    def test_inverse_rejects_singular_shift(self, fixture_path, capsys):
        code = main(
            ["limits", "--input", fixture_path, "--names", "x,y",
             "--formula", "inverse", "--delta", "0.0"]
        )
        assert code == 2

    def test_harmonic_needs_two(self, fixture_path, capsys):
        code = main(
            ["limits", "--input", fixture_path, "--names", "a,b,p", "--formula", "harmonic"]
        )
        assert code == 2

    def test_harmonic_pair(self, fixture_path, capsys):
        code, rep = run(
            capsys, "limits", "--input", fixture_path, "--names", "a,b",
            "--formula", "harmonic",
        )
        assert code == 0
        assert rep["route_deviation"] < 1e-6


class TestVerify:
    def test_order_laws(self, capsys):
        code, rep = run(capsys, "verify", "order_laws", "--dim", "3", "--cases", "8", "--seed", "7")
        assert code == 0
        assert rep["failures"] == []

    def test_vigier(self, capsys):
        code, rep = run(capsys, "verify", "vigier", "--dim", "3", "--cases", "4", "--seed", "1")
        assert code == 0

    def test_unknown_suite_exit_two(self, capsys):
        assert main(["verify", "bogus_suite"]) == 2

    def test_reports_byte_identical_modulo_timing(self, capsys):
        argv = ["verify", "sublattice_closure", "--dim", "3", "--cases", "6", "--seed", "3"]
        code1, rep1 = run(capsys, *argv)
        code2, rep2 = run(capsys, *argv)
        assert code1 == code2 == 0
        rep1.pop("timing"), rep2.pop("timing")
        assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)

    def test_env_var_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("SPECTRAL_LATTICE_SEED", "123")
        _, rep_env = run(capsys, "verify", "order_laws", "--dim", "3", "--cases", "2")
        monkeypatch.delenv("SPECTRAL_LATTICE_SEED")
        _, rep_flag = run(
            capsys, "verify", "order_laws", "--dim", "3", "--cases", "2", "--seed", "123"
        )
        rep_env.pop("timing"), rep_flag.pop("timing")
        assert rep_env == rep_flag


class TestGen:
    def test_projection_round_trip(self, tmp_path, capsys):
        out = tmp_path / "proj.json"
        assert main(["gen", "--kind", "projection", "--dim", "2", "--seed", "1",
                     "--output", str(out)]) == 0
        from spectralorder.cli import load_document, matrices_to_document

        named = load_document(str(out), so.DEFAULT_TOL)
        assert so.is_projection(named["m0"])
        # re-serialization is bit identical
        doc = matrices_to_document(list(named.items()))
        assert json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n" == out.read_text()

    def test_orthogonal_family(self, tmp_path, capsys):
        out = tmp_path / "orth.json"
        assert main(["gen", "--kind", "orthogonal_family", "--count", "3", "--dim", "6",
                     "--seed", "2", "--output", str(out)]) == 0
        from spectralorder.cli import load_document

        mats = list(load_document(str(out), so.DEFAULT_TOL).values())
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.linalg.norm(mats[i].entries @ mats[j].entries, 2) < 1e-10

    def test_commuting_family(self, capsys):
        code, doc = run(capsys, "gen", "--kind", "commuting_family", "--count", "3",
                        "--dim", "4", "--seed", "3")
        assert code == 0
        mats = [
            np.asarray(m["re"]) + 1j * np.asarray(m["im"]) for m in doc["matrices"]
        ]
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.linalg.norm(mats[i] @ mats[j] - mats[j] @ mats[i], 2) < 1e-10


class TestTextFormat:
    def test_compare_text_output(self, fixture_path, capsys):
        code = main(["compare", "--input", fixture_path, "--names", "c,d", "--format", "text"])
        out = capsys.readouterr().out
        assert code == 0
        assert "loewner_leq: True" in out

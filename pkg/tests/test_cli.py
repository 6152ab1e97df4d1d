"""Corpus generation and the experiment-runner CLI contract."""

import json

import numpy as np
import pytest

from vilenkin import cli
from vilenkin.analysis import lp_norm
from vilenkin.corpus import corpus
from vilenkin.group import VilenkinBase
from vilenkin.summability import norlund_kernel, weights_from_spec
from vilenkin.transform import character_values

BASE232 = VilenkinBase.parse("2,3,2")
EXACT = 1e-12


class TestCorpus:
    def test_constant(self):
        f = corpus("constant", BASE232)
        np.testing.assert_array_equal(f.values, 1.0)
        assert lp_norm(f, 1) == pytest.approx(1.0, abs=EXACT)

    def test_spike_arithmetic(self):
        f = corpus("spike:2", BASE232)
        assert np.count_nonzero(f.values) == 2
        assert set(np.unique(f.values.real)) == {0.0, 6.0}
        assert lp_norm(f, 1) == pytest.approx(1.0, abs=EXACT)

    def test_character(self):
        f = corpus("character:3", BASE232)
        np.testing.assert_allclose(f.values, character_values(BASE232, 3), atol=EXACT)
        np.testing.assert_allclose(np.abs(f.values), 1.0, atol=EXACT)

    def test_coset_constant_on_cosets(self):
        f = corpus("coset:2", BASE232, seed=5)
        m_2 = BASE232.cumprod[2]
        for cid in range(m_2):
            members = np.arange(BASE232.size)[np.arange(BASE232.size) % m_2 == cid]
            assert len(set(f.values[members])) == 1

    def test_smooth2_depends_on_two_digits(self):
        base = VilenkinBase.parse("2,3,2,2")
        f = corpus("smooth2", base)
        digits = base.digit_table
        seen = {}
        for rank in range(base.size):
            key = (digits[rank, 0], digits[rank, 1])
            seen.setdefault(key, f.values[rank])
            assert f.values[rank] == seen[key]
        assert len({round(v.real, 12) for v in seen.values()}) > 1

    def test_random_seeded_and_bounded(self):
        f1 = corpus("random", BASE232, seed=3)
        f2 = corpus("random", BASE232, seed=3)
        np.testing.assert_array_equal(f1.values, f2.values)
        assert np.all(np.abs(f1.values) <= 1.0)
        assert not np.array_equal(corpus("random", BASE232, seed=4).values, f1.values)

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            corpus("mystery", BASE232)
        with pytest.raises(ValueError):
            corpus("spike:x", BASE232)
        with pytest.raises(ValueError):
            corpus("smooth2", VilenkinBase.parse("4"))


class TestVerifyCommand:
    def test_small_base_passes(self, capsys):
        code = cli.main(["verify", "--base", "2,3,2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "FAIL" not in out
        assert "PASS orthonormality" in out

    def test_report_written(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        code = cli.main(["verify", "--base", "2,3", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        report = json.loads(path.read_text())
        assert report["passed"] is True
        assert any(c["name"] == "dirichlet_integral" for c in report["checks"])

    def test_tolerance_failure_sets_exit_one(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "EXACT_TOL", -1.0)
        code = cli.main(["verify", "--base", "2,3"])
        captured = capsys.readouterr()
        assert code == 1
        assert "FAIL" in captured.out
        assert "FAILED" in captured.err


class TestConvergeCommand:
    def test_deterministic_output_bytes(self, tmp_path, capsys):
        args = [
            "converge", "--base", "2,3,2", "--weights", "cesaro:0.5",
            "--corpus", "random", "--n", "1..6", "--p", "1,2,inf", "--seed", "9",
        ]
        outputs = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            assert cli.main(args + ["--out", str(path)]) == 0
            outputs.append(path.read_bytes())
        capsys.readouterr()
        assert outputs[0] == outputs[1]

    def test_stdout_csv_header(self, capsys):
        code = cli.main(["converge", "--base", "2,3", "--corpus", "constant", "--n", "1,2"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == "mean_kind,n,p,error,point_rank,point_error"

    def test_n_range_validation(self, capsys):
        code = cli.main(["converge", "--base", "2,3", "--n", "1..99"])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestBenchCommand:
    def test_reports_speedup(self, capsys):
        code = cli.main(["bench", "--base", "2,2,2,2,2,2", "--reps", "3"])
        out = capsys.readouterr().out
        assert code == 0
        report = json.loads(out)
        assert report["m_n"] == 64
        assert report["fast_seconds"] > 0
        assert report["naive_seconds"] > 0
        assert report["speedup"] > 0


class TestKernelDumpCommand:
    def test_dirichlet_dump_matches_library(self, tmp_path, capsys):
        path = tmp_path / "d.csv"
        code = cli.main(["kernel-dump", "--base", "2,3,2", "--order", "6", "--out", str(path)])
        capsys.readouterr()
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "rank,re,im"
        assert len(lines) == 1 + 12

    def test_weighted_kernel_dump(self, tmp_path, capsys):
        path = tmp_path / "f.csv"
        code = cli.main([
            "kernel-dump", "--base", "2,3,2", "--order", "5",
            "--weights", "cesaro:0.5", "--out", str(path),
        ])
        capsys.readouterr()
        assert code == 0
        w = weights_from_spec("cesaro:0.5")
        expected = norlund_kernel(w, BASE232, 5).values
        rows = [line.split(",") for line in path.read_text().splitlines()[1:]]
        got = np.array([complex(float(r[1]), float(r[2])) for r in rows])
        np.testing.assert_array_equal(got, expected)

    def test_tmean_kind_requires_weights(self, capsys):
        code = cli.main(["kernel-dump", "--base", "2,3", "--order", "3", "--kind", "tmean"])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestConfigAndUsage:
    def test_config_file_supplies_defaults_flags_win(self, tmp_path, capsys):
        config = tmp_path / "exp.cfg"
        config.write_text("base=2,3\nn=1..3\ncorpus=constant\n")
        out_path = tmp_path / "out.csv"
        code = cli.main([
            "converge", "--config", str(config), "--n", "1..2", "--out", str(out_path),
        ])
        capsys.readouterr()
        assert code == 0
        body = out_path.read_text().splitlines()[1:]
        orders = {line.split(",")[1] for line in body}
        assert orders == {"1", "2"}  # flag overrode the config's 1..3

    def test_unknown_config_key(self, tmp_path, capsys):
        config = tmp_path / "bad.cfg"
        config.write_text("flavor=strawberry\n")
        code = cli.main(["verify", "--config", str(config)])
        assert code == 2
        assert "unknown config key" in capsys.readouterr().err

    def test_unknown_corpus_is_usage_error(self, capsys):
        code = cli.main(["converge", "--base", "2,3", "--corpus", "mystery"])
        assert code == 2

    def test_cap_enforced(self, capsys):
        code = cli.main(["verify", "--base", "2", "--depth", "13"])
        assert code == 2
        assert "exceeds the cap" in capsys.readouterr().err

    def test_bad_weight_spec(self, capsys):
        code = cli.main(["converge", "--base", "2,3", "--weights", "cesaro:2.0"])
        assert code == 2

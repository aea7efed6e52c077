import os

import pytest
from click.testing import CliRunner

from divbound.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def dist_files(tmp_path):
    p = tmp_path / "p.txt"
    q = tmp_path / "q.txt"
    p.write_text("a\t0.5\nb\t0.5\n", encoding="utf-8")
    q.write_text("# a comment\na\t0.25\nb\t0.75\n", encoding="utf-8")
    return str(p), str(q)


@pytest.fixture
def source_file(tmp_path):
    s = tmp_path / "s.txt"
    s.write_text("a\t0.6\nb\t0.3\nc\t0.1\n", encoding="utf-8")
    return str(s)


class TestDivergence:
    def test_kl(self, runner, dist_files):
        p, q = dist_files
        r = runner.invoke(main, ["divergence", "--divergence", "kl", "--p", p, "--q", q])
        assert r.exit_code == 0
        assert r.stdout == "measure,value\nkl,0.143841036226\n"

    def test_infinity_rendered(self, runner, tmp_path, dist_files):
        p = tmp_path / "point.txt"
        p.write_text("a\t1.0\nb\t0.0\n", encoding="utf-8")
        r = runner.invoke(
            main,
            ["divergence", "--divergence", "dual_kl", "--p", str(p), "--q", dist_files[0]],
        )
        assert r.exit_code == 0
        assert r.stdout.splitlines()[1] == "dual_kl,inf"

    def test_unknown_measure_is_usage_error(self, runner, dist_files):
        p, q = dist_files
        r = runner.invoke(main, ["divergence", "--divergence", "renyi", "--p", p, "--q", q])
        assert r.exit_code == 2

    def test_malformed_file_reports_line(self, runner, tmp_path, dist_files):
        bad = tmp_path / "bad.txt"
        bad.write_text("a\t0.5\nb\tnot-a-number\n", encoding="utf-8")
        r = runner.invoke(
            main, ["divergence", "--divergence", "kl", "--p", str(bad), "--q", dist_files[1]]
        )
        assert r.exit_code == 2
        assert "line 2" in r.stderr

    def test_output_file(self, runner, dist_files, tmp_path):
        p, q = dist_files
        out = tmp_path / "out.csv"
        r = runner.invoke(
            main,
            ["divergence", "--divergence", "tv", "--p", p, "--q", q, "--output", str(out)],
        )
        assert r.exit_code == 0
        assert out.read_text(encoding="utf-8") == "measure,value\ntv,0.25\n"


class TestBounds:
    def test_jeffreys_grid(self, runner):
        r = runner.invoke(main, ["bounds", "--measure", "jeffreys", "--grid", "0.05:0.05:0.95"])
        assert r.exit_code == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0] == "eps,value"
        assert len(lines) == 20  # header + 19 rows

    def test_round_trip_byte_identical(self, runner):
        r = runner.invoke(main, ["bounds", "--measure", "capacitory", "--grid", "0.1:0.1:0.9"])
        assert r.exit_code == 0
        lines = r.stdout.strip().splitlines()
        reemitted = [lines[0]]
        for row in lines[1:]:
            e, v = row.split(",")
            from divbound.textio import fmt_g12

            reemitted.append(f"{fmt_g12(float(e))},{fmt_g12(float(v))}")
        assert "\n".join(reemitted) + "\n" == r.stdout

    def test_inf_at_eps_one(self, runner):
        r = runner.invoke(main, ["bounds", "--measure", "jeffreys", "--grid", "0.5:0.5:1.0"])
        assert r.exit_code == 0
        assert r.stdout.strip().splitlines()[-1] == "1,inf"

    def test_bad_grid(self, runner):
        r = runner.invoke(main, ["bounds", "--measure", "jeffreys", "--grid", "0.9:0.1:0.1"])
        assert r.exit_code == 2


class TestSandwich:
    def test_dual_kl_row(self, runner, dist_files):
        p, q = dist_files
        r = runner.invoke(main, ["sandwich", "--f", "dual_kl", "--p", p, "--q", q])
        assert r.exit_code == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0] == "r_min,r_max,left,middle,right,chi2"
        vals = lines[1].split(",")
        assert float(vals[5]) == pytest.approx(1.0 / 3.0, abs=1e-11)
        assert float(vals[3]) == pytest.approx(0.14384103622589045, abs=1e-11)

    def test_invalid_pairing_exits_one(self, runner, dist_files):
        p, q = dist_files
        r = runner.invoke(main, ["sandwich", "--f", "kl", "--p", p, "--q", q])
        assert r.exit_code == 1


class TestSourcecode:
    def test_shannon_default(self, runner, source_file):
        r = runner.invoke(main, ["sourcecode", "--dist", source_file, "--base", "2"])
        assert r.exit_code == 0
        header, row = r.stdout.strip().splitlines()
        cols = dict(zip(header.split(","), row.split(",")))
        assert float(cols["avg_length"]) == pytest.approx(1.6, abs=1e-12)
        assert float(cols["kraft_sum"]) == pytest.approx(13 / 16, abs=1e-12)
        assert float(cols["kl_pq"]) == pytest.approx(0.0034503992608882173, abs=1e-11)
        assert cols["delta_nonneg"] == "true"

    def test_explicit_lengths(self, runner, source_file, tmp_path):
        lf = tmp_path / "len.txt"
        lf.write_text("a\t1\nb\t2\nc\t4\n", encoding="utf-8")
        r = runner.invoke(
            main,
            ["sourcecode", "--dist", source_file, "--base", "2", "--lengths", str(lf)],
        )
        assert r.exit_code == 0

    def test_kraft_violation_exits_one(self, runner, source_file, tmp_path):
        lf = tmp_path / "len.txt"
        lf.write_text("a\t1\nb\t1\nc\t1\n", encoding="utf-8")
        r = runner.invoke(
            main,
            ["sourcecode", "--dist", source_file, "--base", "2", "--lengths", str(lf)],
        )
        assert r.exit_code == 1

    def test_mismatched_lengths_alphabet(self, runner, source_file, tmp_path):
        lf = tmp_path / "len.txt"
        lf.write_text("a\t1\nb\t2\nz\t4\n", encoding="utf-8")
        r = runner.invoke(
            main,
            ["sourcecode", "--dist", source_file, "--base", "2", "--lengths", str(lf)],
        )
        assert r.exit_code == 2


class TestSourcecodeSweep:
    def test_rows_and_ordering(self, runner):
        r = runner.invoke(main, ["sourcecode-sweep", "--grid", "1e-6:1:7"])
        assert r.exit_code == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0] == "delta_log_d,bound_csiszar,bound_tightened,bound_jeffreys"
        assert len(lines) == 8
        for row in lines[1:]:
            _, cs, ti, je = (float(x) for x in row.split(","))
            assert ti <= cs + 1e-9
            assert je <= cs + 1e-9

    def test_bad_grid(self, runner):
        r = runner.invoke(main, ["sourcecode-sweep", "--grid", "0:1:5"])
        assert r.exit_code == 2


class TestVerify:
    def test_pass_run(self, runner):
        r = runner.invoke(
            main,
            ["verify", "--measure", "capacitory", "--grid", "0.2:0.3:0.8", "--samples", "300", "--seed", "7"],
        )
        assert r.exit_code == 0
        lines = r.stdout.strip().splitlines()
        assert lines[0].startswith("measure,eps,closed_form")
        assert len(lines) == 4
        assert "PASS" in r.stderr
        assert "PCG64" in r.stderr

    def test_bhattacharyya_runs_both_sides(self, runner):
        r = runner.invoke(
            main,
            ["verify", "--measure", "bhattacharyya", "--grid", "0.5:0.1:0.5", "--samples", "200", "--seed", "1"],
        )
        assert r.exit_code == 0
        rows = r.stdout.strip().splitlines()[1:]
        assert {row.split(",")[0] for row in rows} == {
            "bhattacharyya_lower",
            "bhattacharyya_upper",
        }

    def test_failure_exits_one(self, runner):
        r = runner.invoke(
            main,
            [
                "verify", "--measure", "jeffreys", "--grid", "0.5:0.1:0.5",
                "--samples", "50", "--seed", "7", "--gap-threshold", "-1.0",
            ],
        )
        assert r.exit_code == 1
        assert "FAIL" in r.stderr

    def test_grid_outside_domain(self, runner):
        r = runner.invoke(
            main, ["verify", "--measure", "jeffreys", "--grid", "0.5:0.5:1.0", "--samples", "10"]
        )
        assert r.exit_code == 2

    def test_env_seed_fallback(self, runner):
        env = dict(os.environ, DIVBOUND_SEED="42")
        r = runner.invoke(
            main,
            ["verify", "--measure", "tv", "--grid", "0.3:0.1:0.3", "--samples", "50"],
            env=env,
        )
        assert r.exit_code == 0
        assert "seed 42" in r.stderr


def test_help_lists_subcommands(runner):
    r = runner.invoke(main, ["--help"])
    assert r.exit_code == 0
    for name in ("divergence", "bounds", "sandwich", "sourcecode", "sourcecode-sweep", "verify"):
        assert name in r.stdout

import os
import subprocess
import sys

import pytest

from kronmul.cli import (CSV_HEADER, CommandError, main, mul_config_from_env,
                         parse_degree_grid, read_poly_file, render_csv,
                         run_bench, run_selftest, write_poly_file)
from kronmul.modpoly import ModPoly

EXAMPLE_F = "1000003\n4\n274 610 887 621\n"
EXAMPLE_G = "1000003\n4\n553 298 424 790\n"
EXAMPLE_H = (151522, 418982, 788467, 82836, 43043, 964034, 490590)


@pytest.fixture
def poly_files(tmp_path):
    f = tmp_path / "f.txt"
    g = tmp_path / "g.txt"
    f.write_text(EXAMPLE_F)
    g.write_text(EXAMPLE_G)
    return f, g


def test_poly_file_round_trip(tmp_path):
    p = ModPoly((0, 1, 2, 3), 97)
    path = tmp_path / "p.txt"
    write_poly_file(str(path), p)
    assert read_poly_file(str(path)) == p


def test_poly_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("97\n3\n1 2\n")
    with pytest.raises(CommandError):
        read_poly_file(str(bad))
    bad.write_text("97\nx\n")
    with pytest.raises(CommandError):
        read_poly_file(str(bad))
    with pytest.raises(CommandError):
        read_poly_file(str(tmp_path / "missing.txt"))


@pytest.mark.parametrize("variant", ["ks1", "ks2", "ks3", "ks4", "auto"])
def test_mul_command(poly_files, tmp_path, variant):
    f, g = poly_files
    out = tmp_path / "h.txt"
    status = main(["mul", "--modulus", "1000003", "--variant", variant,
                   str(f), str(g), "-o", str(out)])
    assert status == 0
    assert read_poly_file(str(out)).coeffs == EXAMPLE_H


def test_mul_zero_polynomial(tmp_path):
    f = tmp_path / "f.txt"
    g = tmp_path / "g.txt"
    f.write_text("97\n3\n1 2 3\n")
    g.write_text("97\n2\n0 0\n")
    out = tmp_path / "h.txt"
    assert main(["mul", str(f), str(g), "-o", str(out)]) == 0
    assert read_poly_file(str(out)).coeffs == (0, 0, 0, 0)


def test_mul_to_stdout(poly_files, capsys):
    f, g = poly_files
    assert main(["mul", str(f), str(g)]) == 0
    lines = capsys.readouterr().out.split()
    assert lines[0] == "1000003" and lines[1] == "7"
    assert tuple(int(t) for t in lines[2:]) == EXAMPLE_H


def test_mul_modulus_mismatch(poly_files, tmp_path, capsys):
    f, g = poly_files
    other = tmp_path / "other.txt"
    other.write_text("97\n1\n5\n")
    assert main(["mul", str(f), str(other)]) == 1
    assert "modulus mismatch" in capsys.readouterr().err
    assert main(["mul", "--modulus", "7", str(f), str(g)]) == 1


def test_parse_degree_grid():
    assert parse_degree_grid("1:10:+3") == [1, 4, 7, 10]
    log_points = parse_degree_grid("100:5000:log")
    assert log_points[0] == 100 and log_points[-1] == 5000
    assert 15 <= len(log_points) <= 20
    assert log_points == sorted(set(log_points))
    for bad in ["5", "10:1:log", "1:10:lin", "0:9:+1", "1:9:+0"]:
        with pytest.raises(CommandError):
            parse_degree_grid(bad)


def test_bench_csv_schema(tmp_path):
    out = tmp_path / "bench.csv"
    status = main(["bench", "--modulus-bits", "8", "--degrees", "2:6:+4",
                   "--variants", "ks1,ks4", "--reps", "3", "--seed", "5",
                   "--count-ops", "-o", str(out)])
    assert status == 0
    lines = out.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    assert any("seed=5" in c for c in comments)
    body = [l for l in lines if not l.startswith("#")]
    assert body[0] == CSV_HEADER
    rows = [l.split(",") for l in body[1:]]
    assert len(rows) == 4  # 2 degrees x 2 variants
    for degree, length, bits, variant, ns, ops, ratio in rows:
        assert int(length) == int(degree) + 1
        assert bits == "8"
        assert variant in ("ks1", "ks4")
        assert int(ns) > 0
        assert int(ops) > 0  # counted because of --count-ops
        if variant == "ks1":
            assert float(ratio) == 1.0


def test_bench_ratio_against_ks1_rows():
    comments, rows = run_bench([4], 6, ["ks1", "ks2", "ks3"], reps=3, seed=2,
                               count_ops=True)
    by_variant = {r.variant: r for r in rows}
    base = by_variant["ks1"].wall_ns_median
    for r in rows:
        assert r.ratio_vs_ks1 == pytest.approx(r.wall_ns_median / base)
    text = render_csv(comments, rows)
    assert text.splitlines()[1] == CSV_HEADER


def test_bench_rejects_bad_grid(capsys):
    assert main(["bench", "--degrees", "nope"]) == 1
    assert "invalid degree grid" in capsys.readouterr().err
    assert main(["bench", "--degrees", "1:4:+1", "--variants", "auto"]) == 1
    assert main(["bench", "--degrees", "1:4:+1", "--reps", "0"]) == 1


def test_selftest_passes(capsys):
    assert main(["selftest", "--iters", "25"]) == 0
    out = capsys.readouterr().out
    assert "selftest passed" in out


def test_selftest_zero_iters(capsys):
    assert main(["selftest", "--iters", "0"]) == 0
    assert "0 cases executed" in capsys.readouterr().out


def test_selftest_mutation_guard_fails(capsys):
    assert main(["selftest", "--iters", "25", "--mutate"]) == 1
    assert "FAILED" in capsys.readouterr().out


def test_selftest_runs_shared_rng_reproducibly(capsys):
    assert run_selftest(seed=123, iters=10, out=lambda *_: None) == 0


def test_env_threshold_override(monkeypatch):
    monkeypatch.setenv("KRONMUL_KARATSUBA_THRESHOLD", "7")
    assert mul_config_from_env().karatsuba_threshold == 7
    monkeypatch.setenv("KRONMUL_KARATSUBA_THRESHOLD", "zero")
    with pytest.raises(CommandError):
        mul_config_from_env()
    monkeypatch.setenv("KRONMUL_KARATSUBA_THRESHOLD", "0")
    with pytest.raises(CommandError):
        mul_config_from_env()
    monkeypatch.delenv("KRONMUL_KARATSUBA_THRESHOLD")
    assert mul_config_from_env().karatsuba_threshold == 16


def test_selftest_with_tiny_threshold(monkeypatch, capsys):
    # forces deep Karatsuba recursion everywhere and must still agree
    monkeypatch.setenv("KRONMUL_KARATSUBA_THRESHOLD", "1")
    assert main(["selftest", "--iters", "10"]) == 0


def test_module_entry_point(poly_files, tmp_path):
    f, g = poly_files
    out = tmp_path / "h.txt"
    env = dict(os.environ)
    src = os.path.join(os.path.dirname(os.path.dirname(__file__)), "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "kronmul", "mul", "--variant", "ks2",
         str(f), str(g), "-o", str(out)],
        env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert read_poly_file(str(out)).coeffs == EXAMPLE_H

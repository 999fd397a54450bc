import math
import os
import subprocess
import sys

import numpy as np
import pytest

from isingv.cli import main, parse_complex
from isingv.emit import RunConfig, ScanTable, fmt15, ordered_map
from isingv.errors import DomainError


class TestEmit:
    def test_fmt15_roundtrip(self):
        # 15 significant digits: faithful to ~1 ulp (exact roundtrip would
        # need 17)
        for x in (1.0 / 3.0, math.pi, 1e-15, -2.5e17):
            assert abs(float(fmt15(x)) - x) <= 4e-15 * abs(x)
        assert float(fmt15(0.5)) == 0.5

    def test_table_rectangularity(self):
        with pytest.raises(DomainError):
            ScanTable(headers=["a", "b"], rows=[(1.0,)])

    def test_csv_deterministic(self):
        rows = [(float(i), math.sin(i)) for i in range(50)]
        a = ScanTable(headers=["i", "s"], rows=rows).to_csv_text()
        b = ScanTable(headers=["i", "s"], rows=rows).to_csv_text()
        assert a == b
        assert a.splitlines()[0] == "i,s"

    def test_svg_polyline(self):
        tab = ScanTable(headers=["x", "y"], rows=[(0.0, 1.0), (1.0, 2.0), (2.0, 0.5)])
        svg = tab.to_svg_text()
        assert svg.startswith("<svg") and "<polyline" in svg
        assert tab.to_svg_text() == svg  # deterministic bytes

    def test_runconfig_validation(self):
        RunConfig(tol=1e-10)
        with pytest.raises(DomainError):
            RunConfig(tol=1e-15)
        with pytest.raises(DomainError):
            RunConfig(tol=0.1)
        with pytest.raises(DomainError):
            RunConfig(fmt="png")
        with pytest.raises(DomainError):
            RunConfig(threads=0)

    def test_ordered_map_thread_independence(self):
        items = list(range(40))
        f = lambda i: math.sin(0.1 * i)
        assert ordered_map(f, items, threads=1) == ordered_map(f, items, threads=8)


class TestParseComplex:
    def test_forms(self):
        assert parse_complex("10") == 10.0
        assert parse_complex("1e9") == 1e9
        assert parse_complex("2-2i") == 2 - 2j
        assert parse_complex("-3") == -3.0
        assert parse_complex("3.5e-1+2i") == 0.35 + 2j

    def test_bad(self):
        with pytest.raises(DomainError):
            parse_complex("spam")


class TestCli:
    def test_v_all_routes_agree(self, capsys):
        assert main(["v", "--n", "10", "--method", "all"]) == 0
        out = capsys.readouterr().out
        vals = [float(line.split("v = ")[1].split(" + ")[0])
                for line in out.strip().splitlines()]
        assert max(vals) - min(vals) < 1e-9
        # values differ at most in the 10th+ digit
        assert len({f"{v:.9g}" for v in vals}) == 1

    def test_v_large(self, capsys):
        assert main(["v", "--n", "1e9", "--method", "integral"]) == 0
        val = float(capsys.readouterr().out.split("v = ")[1].split(" + ")[0])
        assert abs(val) < 1e-15

    def test_v_negative_axis_exit_2(self, capsys):
        assert main(["v", "--n", "-3"]) == 2
        assert "negative real axis" in capsys.readouterr().err

    def test_boundary_scan_residual_column(self, tmp_path):
        out = tmp_path / "scan.csv"
        rc = main(["boundary-scan", "--x", "1/2", "--y-min", "0.05", "--y-max", "1",
                   "--points", "8", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().strip().splitlines()
        header = lines[0].split(",")
        idx = header.index("reflection_residual")
        residuals = [float(l.split(",")[idx]) for l in lines[1:]]
        assert all(r < 1e-8 for r in residuals)

    def test_boundary_scan_converging_coefficient(self, capsys):
        rc = main(["boundary-scan", "--x", "1/3", "--y-min", "1e-3", "--y-max", "1e-2",
                   "--points", "5"])
        assert rc == 0
        lines = capsys.readouterr().out.strip().splitlines()
        hdr = lines[0].split(",")
        iy, ire = hdr.index("y"), hdr.index("re_S")
        first = lines[1].split(",")
        y, re_s = float(first[iy]), float(first[ire])
        assert abs(re_s * y * y - 1.5788e-2) < 0.02 * 1.5788e-2

    def test_boundary_scan_empty_range_exit_2(self):
        assert main(["boundary-scan", "--x", "1/2", "--y-min", "1.0",
                     "--y-max", "0.5"]) == 2

    def test_boundary_scan_bad_rational_exit_2(self):
        assert main(["boundary-scan", "--x", "2/4"]) == 2

    def test_fig1(self, tmp_path):
        out = tmp_path / "fig1.csv"
        assert main(["fig", "--which", "1", "--n-max", "100", "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        assert len(lines) == 101
        for line in lines[1:]:
            s = float(line.split(",")[1])
            assert 1.0 <= s < math.pi**2 / 8.0

    def test_fig2_schwarz_conjugate_tables(self, tmp_path):
        a = tmp_path / "up.csv"
        b = tmp_path / "lo.csv"
        assert main(["fig", "--which", "2", "--points", "11", "--branch", "upper",
                     "--out", str(a)]) == 0
        assert main(["fig", "--which", "2", "--points", "11", "--branch", "lower",
                     "--out", str(b)]) == 0
        la = a.read_text().strip().splitlines()[1:]
        lb = b.read_text().strip().splitlines()[1:]
        # upper table rows at +-iy pair with lower rows at -+iy conjugated:
        # (+ block, - block) of one file matches (- block, + block) of the other
        half = len(la) // 2
        for ra, rb in zip(la[:half], lb[half:]):
            va, vb = ra.split(","), rb.split(",")
            assert math.isclose(float(va[1]), float(vb[1]), abs_tol=1e-13)
            assert math.isclose(float(va[2]), -float(vb[2]), abs_tol=1e-13)

    def test_byte_determinism(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        argv = ["fig", "--which", "2", "--points", "31", "--out"]
        assert main(argv + [str(a)]) == 0
        assert main(argv + [str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_independence(self, tmp_path):
        a = tmp_path / "t1.csv"
        b = tmp_path / "t8.csv"
        base = ["boundary-scan", "--x", "1/3", "--y-min", "0.05", "--y-max", "0.5",
                "--points", "12"]
        assert main(base + ["--threads", "1", "--out", str(a)]) == 0
        assert main(base + ["--threads", "8", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_verify_divisor_exit_0(self, capsys):
        assert main(["verify", "divisor"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_svg_output(self, tmp_path):
        out = tmp_path / "fig1.svg"
        assert main(["fig", "--which", "1", "--n-max", "64", "--format", "svg",
                     "--out", str(out)]) == 0
        assert out.read_text().startswith("<svg")

    def test_installed_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "isingv.cli", "v", "--n", "4"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "v = " in proc.stdout

    def test_env_thread_default(self, monkeypatch):
        from isingv.emit import default_threads

        monkeypatch.setenv("BOUNDARY_SCOPE_THREADS", "5")
        assert default_threads() == 5
        monkeypatch.setenv("BOUNDARY_SCOPE_THREADS", "junk")
        assert default_threads() == 1

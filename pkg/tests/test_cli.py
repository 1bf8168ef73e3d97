import subprocess
import sys

import numpy as np
import pytest

from scsa import bench
from scsa.cli import main
from scsa.errors import InvalidParams
from scsa.io import OUTPUT_DIR_ENV, MalformedCSV, read_csv, read_table, write_signal
from scsa.signal import Signal


def load(path):
    return read_table(path)[:2]


class TestGen:
    def test_gaussian_default(self, tmp_path):
        out = tmp_path / "g.csv"
        assert main(["gen", "gaussian", "--n", "512", "--out", str(out)]) == 0
        t, y = load(out)
        assert t.size == 512
        assert y.max() == pytest.approx(2.0, abs=1e-3)
        assert t[0] == -95.0

    def test_custom_peaks(self, tmp_path):
        out = tmp_path / "g.csv"
        main(["gen", "gaussian", "--n", "100", "--t-start", "0", "--delta", "1",
              "--peak", "3,50,4", "--out", str(out)])
        t, y = load(out)
        assert y[50] == pytest.approx(3.0)

    def test_blocks_rows(self, tmp_path):
        out = tmp_path / "b.csv"
        assert main(["gen", "blocks", "--n", "512", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 513

    def test_mixture_prints_coefficients(self, tmp_path, capsys):
        out = tmp_path / "m.csv"
        assert main(["gen", "five_peaks", "--snr-db", "10", "--seed", "1", "--out", str(out)]) == 0
        assert capsys.readouterr().out.startswith("k1=")

    def test_unwritable(self, tmp_path):
        assert main(["gen", "gaussian", "--out", str(tmp_path / "missing" / "x.csv")]) == 2

    def test_missing_out(self):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "gaussian"])
        assert exc.value.code == 1

    def test_output_dir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
        assert main(["gen", "sech2", "--n", "64", "--out", "rel.csv"]) == 0
        assert (tmp_path / "rel.csv").exists()


class TestDenoise:
    def test_fixed_h_sech2(self, tmp_path, capsys):
        src, out = tmp_path / "s.csv", tmp_path / "o.csv"
        main(["gen", "sech2", "--n", "512", "--out", str(src)])
        assert main(["denoise", str(src), "--method", "cscsa", "--h", "1", "--out", str(out)]) == 0
        _, y = load(src)
        _, yh = load(out)
        assert np.abs(y - yh).max() < 1e-2
        assert "h_star=1.0" in capsys.readouterr().out

    def test_sg_reproduces_cubic(self, tmp_path):
        t = np.arange(40.0)
        src, out = tmp_path / "c.csv", tmp_path / "o.csv"
        write_signal(src, Signal(0.01 * (t - 20) ** 3 - t, 1.0))
        assert main(["denoise", str(src), "--method", "sg", "--window", "5", "--order", "3",
                     "--out", str(out)]) == 0
        np.testing.assert_allclose(load(out)[1], load(src)[1], atol=1e-9)

    def test_scan_writes_trace(self, tmp_path, capsys):
        src, out, tr = tmp_path / "s.csv", tmp_path / "o.csv", tmp_path / "tr.csv"
        main(["gen", "gaussian", "--n", "128", "--noise-level", "5", "--seed", "2", "--out", str(src)])
        assert main(["denoise", str(src), "--method", "cscsa", "--h-count", "6",
                     "--trace", str(tr), "--out", str(out)]) == 0
        assert len(tr.read_text().splitlines()) == 7
        assert capsys.readouterr().out.startswith("h_star=")

    def test_alpha_requires_params(self, tmp_path):
        src = tmp_path / "s.csv"
        main(["gen", "gaussian", "--n", "64", "--out", str(src)])
        assert main(["denoise", str(src), "--method", "alpha_scsa", "--out", str(tmp_path / "o.csv")]) == 1

    def test_missing_method(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["denoise", "x.csv", "--out", "y.csv"])
        assert exc.value.code == 1

    def test_malformed_input(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,y\n0,1\n1,oops\n")
        assert main(["denoise", str(bad), "--method", "ma", "--out", str(tmp_path / "o.csv")]) == 3

    def test_missing_input(self, tmp_path):
        assert main(["denoise", str(tmp_path / "nope.csv"), "--method", "ma",
                     "--out", str(tmp_path / "o.csv")]) == 2


class TestCurvature:
    def test_line_is_zero(self, tmp_path, capsys):
        src = tmp_path / "l.csv"
        write_signal(src, Signal(np.arange(16.0) * 0.5, 1.0))
        assert main(["curvature", str(src)]) == 0
        assert capsys.readouterr().out.strip() == "total_curvature=0.0"

    def test_parabola_and_profile(self, tmp_path, capsys):
        t = np.arange(-5.0, 6.0)
        src, prof = tmp_path / "p.csv", tmp_path / "k.csv"
        write_signal(src, Signal(t**2, 1.0, -5.0))
        assert main(["curvature", str(src), "--profile", str(prof)]) == 0
        k = 2 / (1 + 4 * t[1:-1] ** 2) ** 1.5
        total = float(capsys.readouterr().out.split("=")[1])
        assert total == pytest.approx(k.sum(), rel=1e-12)
        pt, py = load(prof)
        assert pt.size == t.size - 2
        np.testing.assert_allclose(py, k, rtol=1e-12)


class TestCSV:
    def test_round_trip(self, tmp_path, rng):
        y = Signal(rng.standard_normal(33), 0.1, -1.7)
        write_signal(tmp_path / "r.csv", y)
        t, back = read_csv(tmp_path / "r.csv")
        np.testing.assert_array_equal(back.samples, y.samples)
        np.testing.assert_array_equal(t, y.t)

    @pytest.mark.parametrize("text", ["a,b\n0,1\n1,2\n", "t,y\n0,1\n", "t,y\n0,1\n1,2\n5,3\n",
                                      "t,y\n0,1\n1,nan\n2,3\n", "t,y\n0,1,2\n1,2,3\n"])
    def test_malformed(self, tmp_path, text):
        p = tmp_path / "m.csv"
        p.write_text(text)
        with pytest.raises(MalformedCSV):
            read_table(p)


CONFIG = """
[bench]
signals = gaussian
n = 128
methods = sg, ma
seeds = 3

[noise]
levels = 2, 5

[sg]
window = 9
order = 2
"""


class TestBench:
    def config(self, tmp_path, text=CONFIG):
        p = tmp_path / "bench.ini"
        p.write_text(text)
        return p

    def test_row_count_and_summary(self, tmp_path):
        out = tmp_path / "rows.csv"
        assert main(["bench", str(self.config(tmp_path)), "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(bench.COLUMNS)
        assert len(lines) == 1 + 12
        summary = (tmp_path / "rows_summary.csv").read_text().splitlines()
        assert len(summary) == 1 + 4
        assert summary[1].split(",")[4] == "3"

    def test_reruns_identical(self, tmp_path):
        cfg = self.config(tmp_path, CONFIG.replace("sg, ma", "cscsa, sg") + "\n[cscsa]\nh_count = 4\n")
        a, b, c = (tmp_path / f"{x}.csv" for x in "abc")
        main(["bench", str(cfg), "--out", str(a)])
        main(["bench", str(cfg), "--out", str(b)])
        main(["bench", str(cfg), "--out", str(c), "--workers", "2"])
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_level_range(self):
        levels = bench.parse_levels("1:12:0.5")
        assert len(levels) == 23 and levels[0] == 1.0 and levels[-1] == 12.0

    def test_override(self, tmp_path):
        cfg = bench.BenchConfig.from_file(self.config(tmp_path), {"bench.seeds": "1"})
        assert len(list(cfg.cells())) == 2

    def test_mixture_mode(self, tmp_path):
        cfg = bench.BenchConfig.from_file(
            self.config(tmp_path, CONFIG.replace("levels = 2, 5", "snr_db = 10")), {"bench.seeds": "1"})
        rows = bench.run_bench(cfg)
        assert [r[2] for r in rows] == [10.0, 10.0]

    @pytest.mark.parametrize("text", [
        CONFIG.replace("levels = 2, 5", ""),
        CONFIG.replace("levels = 2, 5", "levels = 2\nsnr_db = 5"),
        CONFIG.replace("sg, ma", "wavelet"),
        CONFIG.replace("sg, ma", "alpha_scsa"),
        CONFIG.replace("signals = gaussian", "signals = ecg"),
        "[bench]\nsignals = gaussian\n",
    ])
    def test_invalid_config(self, tmp_path, text):
        with pytest.raises(InvalidParams):
            bench.BenchConfig.from_file(self.config(tmp_path, text))

    def test_invalid_config_exit_code(self, tmp_path):
        cfg = self.config(tmp_path, CONFIG.replace("sg, ma", "wavelet"))
        assert main(["bench", str(cfg), "--out", str(tmp_path / "o.csv")]) == 1


def test_module_entry_point(tmp_path):
    out = tmp_path / "x.csv"
    proc = subprocess.run([sys.executable, "-m", "scsa", "gen", "sech2", "--n", "32", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and out.exists()

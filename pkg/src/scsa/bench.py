"""Seeded denoising benchmarks driven by an INI-style config file.

Example config::

    [bench]
    signals = gaussian, doppler
    n = 512
    methods = cscsa, sg
    seeds = 3

    [noise]
    levels = 1:12:0.5          ; percent, list or inclusive start:stop:step
    ; snr_db = 7, 10, 14       ; two-record mixture instead of white noise
    ; record_a = ma.csv
    ; record_b = em.csv

    [cscsa]
    nu = 0
    h_count = 50

    [sg]
    window = 29
    order = 4
"""

from __future__ import annotations

import configparser
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import signals as sig
from .baselines import SGParams, moving_average, savitzky_golay
from .errors import InvalidParams, PeakNotFound
from .io import fmt, read_signal, resolve_output
from .metrics import detect_peak, mse, peak_height_error, peak_width_error, snr_out
from .selection import AlphaCost, CurvatureCost, HGrid, default_h_grid, scan_h
from .signal import Signal

COLUMNS = [
    "signal", "n", "noise_level_or_snr", "method", "seed",
    "mse", "snr_out_db", "peak_height_err", "peak_width_err",
]
METRICS = COLUMNS[5:]
METHODS = ("cscsa", "alpha_scsa", "sg", "ma")
SIGNALS = ("gaussian", "five_peaks", "sech2") + tuple(k.value for k in sig.StandardSignal) + tuple(sig.ALIASES)


def parse_list(text: str, cast=str) -> list:
    return [cast(x.strip()) for x in text.split(",") if x.strip()]


def parse_levels(text: str) -> list[float]:
    """``"1, 2.5"`` or inclusive ``"start:stop:step"``."""
    text = text.strip()
    if ":" in text and "," not in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0 or stop < start:
            raise InvalidParams(f"bad range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(count)]
    return parse_list(text, float)


def parse_interval(text: str) -> tuple[int, int]:
    a, b = text.split(":")
    return int(a), int(b)


def make_signal(name: str, n: int) -> Signal:
    if name == "gaussian":
        return sig.single_peak(n)
    if name == "five_peaks":
        return sig.five_peaks(n)
    if name == "sech2":
        return sig.sech2(n)
    return sig.standard_test_signal(name, n)


@dataclass
class BenchConfig:
    signals: list[str]
    ns: list[int]
    methods: list[str]
    seeds: int = 1
    seed_offset: int = 0
    workers: int = 1
    levels: list[float] = field(default_factory=list)
    snr_db: list[float] = field(default_factory=list)
    record_a: str | None = None
    record_b: str | None = None
    method_params: dict[str, dict[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        for s in self.signals:
            if s not in SIGNALS:
                raise InvalidParams(f"unknown signal {s!r}")
        for m in self.methods:
            if m not in METHODS:
                raise InvalidParams(f"unknown method {m!r}")
        if not self.signals or not self.methods or not self.ns:
            raise InvalidParams("signals, n and methods must be non-empty")
        if self.seeds < 1:
            raise InvalidParams("seeds must be >= 1")
        if bool(self.levels) == bool(self.snr_db):
            raise InvalidParams("give exactly one of noise.levels or noise.snr_db")
        for lvl in self.levels:
            if not 0 < lvl <= 100:
                raise InvalidParams(f"noise level {lvl} outside (0, 100]")
        if (self.record_a is None) != (self.record_b is None):
            raise InvalidParams("record_a and record_b go together")
        if "alpha_scsa" in self.methods:
            missing = {"alpha", "peak_regions", "noise_interval"} - set(self.method_params.get("alpha_scsa", {}))
            if missing:
                raise InvalidParams(f"[alpha_scsa] needs {sorted(missing)}")

    @classmethod
    def from_file(cls, path, overrides: dict[str, str] | None = None) -> BenchConfig:
        cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        with open(path) as fh:
            try:
                cp.read_file(fh)
            except configparser.Error as exc:
                raise InvalidParams(f"{path}: {exc}") from None
        return cls.from_parser(cp, overrides, base=Path(path).parent)

    @classmethod
    def from_parser(cls, cp: configparser.ConfigParser, overrides=None, base: Path = Path(".")):
        for key, value in (overrides or {}).items():
            section, _, option = key.partition(".")
            if not cp.has_section(section):
                cp.add_section(section)
            cp.set(section, option, value)
        try:
            b, noise = cp["bench"], cp["noise"]
            records = [noise.get("record_a"), noise.get("record_b")]
            records = [str(base / r) if r else None for r in records]
            return cls(
                signals=parse_list(b["signals"]),
                ns=parse_list(b.get("n", "512"), int),
                methods=parse_list(b["methods"]),
                seeds=b.getint("seeds", 1),
                seed_offset=b.getint("seed_offset", 0),
                workers=b.getint("workers", 1),
                levels=parse_levels(noise["levels"]) if "levels" in noise else [],
                snr_db=parse_list(noise["snr_db"], float) if "snr_db" in noise else [],
                record_a=records[0],
                record_b=records[1],
                method_params={m: dict(cp[m]) if cp.has_section(m) else {} for m in METHODS},
            )
        except KeyError as exc:
            raise InvalidParams(f"missing config entry {exc}") from None
        except ValueError as exc:
            raise InvalidParams(str(exc)) from None

    def cells(self):
        noises = self.levels or self.snr_db
        for s in self.signals:
            for n in self.ns:
                for x in noises:
                    for seed in range(self.seed_offset, self.seed_offset + self.seeds):
                        yield s, n, x, seed


def _corrupt(cfg: BenchConfig, clean: Signal, noise: float, seed: int) -> Signal:
    if cfg.levels:
        return sig.add_white_noise(clean, noise, seed)
    if cfg.record_a is not None:
        a, b = read_signal(cfg.record_a).samples, read_signal(cfg.record_b).samples
        if min(a.size, b.size) < clean.n:
            raise InvalidParams("noise records shorter than the signal")
        rng = np.random.default_rng(seed)
        start = int(rng.integers(0, min(a.size, b.size) - clean.n + 1))
        a, b = a[start:start + clean.n], b[start:start + clean.n]
    else:
        a = sig.synthetic_noise_record(clean.n, 2 * seed + 1, "white")
        b = sig.synthetic_noise_record(clean.n, 2 * seed + 2, "brown")
    return sig.mix_noise(clean, a, b, noise)[0]


def run_method(method: str, noisy: Signal, params: dict[str, str]) -> Signal:
    """Denoise with one of ``METHODS`` using string-valued config params."""
    if method in ("cscsa", "alpha_scsa"):
        count = int(params.get("h_count", 50))
        grid = default_h_grid(noisy, count)
        if "h_min" in params or "h_max" in params:
            grid = HGrid(float(params.get("h_min", grid.h_min)), float(params.get("h_max", grid.h_max)), count)
        if method == "cscsa":
            mu = params.get("mu")
            cost = CurvatureCost(mu=float(mu) if mu else None, nu=int(params.get("nu", 0)))
        else:
            cost = AlphaCost(
                alpha=float(params["alpha"]),
                peak_regions=[parse_interval(x) for x in parse_list(params["peak_regions"])],
                noise_interval=parse_interval(params["noise_interval"]),
            )
        return scan_h(noisy, grid, cost).y_h
    if method == "sg":
        return savitzky_golay(noisy, SGParams(int(params.get("window", 29)), int(params.get("order", 4))))
    if method == "ma":
        return moving_average(noisy, int(params.get("window", 5)))
    raise InvalidParams(f"unknown method {method!r}")


def _peak_errors(clean_peak, y_h: Signal) -> tuple[float, float]:
    if clean_peak is None:
        return math.nan, math.nan
    try:
        p = detect_peak(y_h)
    except PeakNotFound:
        return math.nan, math.nan
    return peak_height_error(p, clean_peak), peak_width_error(p, clean_peak)


def run_cell(cfg: BenchConfig, cell) -> list[tuple]:
    name, n, noise, seed = cell
    clean = make_signal(name, n)
    noisy = _corrupt(cfg, clean, noise, seed)
    try:
        clean_peak = detect_peak(clean)
    except PeakNotFound:
        clean_peak = None
    rows = []
    for method in cfg.methods:
        y_h = run_method(method, noisy, cfg.method_params.get(method, {}))
        try:
            snr = snr_out(clean, y_h)
        except ArithmeticError:
            snr = math.inf
        rows.append((name, n, noise, method, seed, mse(clean, y_h), snr, *_peak_errors(clean_peak, y_h)))
    return rows


def _run_cell_star(args):
    return run_cell(*args)


def run_bench(cfg: BenchConfig, workers: int | None = None) -> list[tuple]:
    """Run every (signal, n, noise, seed) cell; rows come back sorted."""
    workers = cfg.workers if workers is None else workers
    cells = list(cfg.cells())
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_cell_star, [(cfg, c) for c in cells]))
    else:
        chunks = [run_cell(cfg, c) for c in cells]
    rows = [r for chunk in chunks for r in chunk]
    order = {m: i for i, m in enumerate(cfg.methods)}
    rows.sort(key=lambda r: (r[0], r[1], r[2], order[r[3]], r[4]))
    return rows


def aggregate(rows: list[tuple]) -> list[tuple]:
    """Mean of each metric per (signal, n, noise, method), ignoring NaNs."""
    groups: dict[tuple, list[tuple]] = {}
    for r in rows:
        groups.setdefault(r[:4], []).append(r)
    out = []
    for key, members in groups.items():
        values = np.array([m[5:] for m in members], dtype=float)
        means = []
        for col in values.T:
            finite = col[~np.isnan(col)]
            means.append(float(finite.mean()) if finite.size else math.nan)
        out.append((*key, len(members), *means))
    return out


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return fmt(v)


def write_rows(path, header, rows):
    path = resolve_output(path)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for r in rows:
            fh.write(",".join(_cell(v) for v in r) + "\n")
    return path


def write_bench(rows, out_path, summary_path=None) -> tuple[Path, Path]:
    out = write_rows(out_path, COLUMNS, rows)
    if summary_path is None:
        p = Path(out_path)
        summary_path = p.with_name(p.stem + "_summary" + (p.suffix or ".csv"))
    summary = write_rows(summary_path, [*COLUMNS[:4], "count", *METRICS], aggregate(rows))
    return out, summary

"""Command-line front end: ``scsa gen | denoise | bench | curvature``.

Exit codes: 0 success, 1 usage or configuration, 2 I/O, 3 malformed data,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import bench, signals as sig
from .baselines import SGParams, moving_average, savitzky_golay
from .curvature import discrete_curvature
from .errors import DegenerateInput, InvalidInput, InvalidParams, InvalidSignal, NumericalFailure, SCSAError
from .io import MalformedCSV, fmt, read_csv, read_signal, read_table, write_columns, write_signal
from .metrics import snr_out
from .selection import AlphaCost, CurvatureCost, HGrid, default_h_grid, evaluate_h, scan_h
from .signal import Signal
from .spectral import scsa_transform

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3, 4
NU_SWEEP = range(-2, 3)

log = logging.getLogger("scsa")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _interval(text: str) -> tuple[int, int]:
    try:
        return bench.parse_interval(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected FIRST:LAST, got {text!r}") from None


def _peak(text: str) -> sig.GaussianPeak:
    try:
        a, u, s = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected AMPLITUDE,POSITION,WIDTH, got {text!r}") from None
    return sig.GaussianPeak(a, u, s)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="scsa", description="Semi-classical signal analysis denoising.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a synthetic signal as t,y CSV")
    g.add_argument("kind", choices=bench.SIGNALS)
    g.add_argument("--n", type=int, default=512)
    g.add_argument("--out", required=True)
    g.add_argument("--peak", type=_peak, action="append",
                   help="AMPLITUDE,POSITION,WIDTH for 'gaussian' (repeatable)")
    g.add_argument("--t-start", type=float)
    g.add_argument("--delta", type=float)
    g.add_argument("--noise-level", type=float, help="white noise, percent of max|y|")
    g.add_argument("--snr-db", type=float, help="two-record mixture noise at this input SNR")
    g.add_argument("--record-a")
    g.add_argument("--record-b")
    g.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("denoise", help="denoise a t,y CSV")
    d.add_argument("input")
    d.add_argument("--method", choices=bench.METHODS, required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--h", type=float, help="fixed h instead of a scan")
    d.add_argument("--mu", type=float)
    d.add_argument("--nu", type=int, default=0)
    d.add_argument("--h-min", type=float)
    d.add_argument("--h-max", type=float)
    d.add_argument("--h-count", type=int, default=50)
    d.add_argument("--alpha", type=float)
    d.add_argument("--peak-region", type=_interval, action="append", help="FIRST:LAST sample indices")
    d.add_argument("--noise-interval", type=_interval)
    d.add_argument("--window", type=int)
    d.add_argument("--order", type=int, default=4)
    d.add_argument("--reference", help="clean t,y CSV; sweeps nu in -2..2 and keeps the best")
    d.add_argument("--trace", help="write the h scan as CSV")
    d.add_argument("--workers", type=int, default=1)

    b = sub.add_parser("bench", help="run a benchmark described by a config file")
    b.add_argument("config")
    b.add_argument("--out", required=True)
    b.add_argument("--summary")
    b.add_argument("--workers", type=int)
    b.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                   help="override a config value")

    c = sub.add_parser("curvature", help="total discrete curvature of a t,y CSV")
    c.add_argument("input")
    c.add_argument("--profile", help="write per-sample curvature as t,y CSV")
    return p


def _generate(args) -> Signal:
    if args.kind == "gaussian":
        peaks = args.peak or list(sig.SINGLE_PEAK)
        lo, hi = sig.SINGLE_PEAK_SPAN
        t0 = lo if args.t_start is None else args.t_start
        delta = (hi - lo) / args.n if args.delta is None else args.delta
        return sig.gaussian_peaks(peaks, args.n, t0, delta)
    if args.peak:
        raise UsageError("--peak only applies to 'gaussian'")
    y = bench.make_signal(args.kind, args.n)
    if args.t_start is not None or args.delta is not None:
        y = Signal(y.samples, y.delta if args.delta is None else args.delta,
                   y.t_start if args.t_start is None else args.t_start)
    return y


def cmd_gen(args) -> int:
    y = _generate(args)
    if args.noise_level is not None and args.snr_db is not None:
        raise UsageError("--noise-level and --snr-db are exclusive")
    if args.noise_level is not None:
        y = sig.add_white_noise(y, args.noise_level, args.seed)
    elif args.snr_db is not None:
        if args.record_a and args.record_b:
            a, b = read_signal(args.record_a), read_signal(args.record_b)
        elif args.record_a or args.record_b:
            raise UsageError("--record-a and --record-b go together")
        else:
            a = sig.synthetic_noise_record(y.n, 2 * args.seed + 1, "white")
            b = sig.synthetic_noise_record(y.n, 2 * args.seed + 2, "brown")
        y, k1, k2 = sig.mix_noise(y, a, b, args.snr_db)
        print(f"k1={fmt(k1)} k2={fmt(k2)}")
    write_signal(args.out, y)
    return EXIT_OK


def _cost(args, y: Signal, nu: int):
    if args.method == "cscsa":
        return CurvatureCost(mu=args.mu, nu=nu)
    if args.alpha is None or not args.peak_region or args.noise_interval is None:
        raise UsageError("alpha_scsa needs --alpha, --peak-region and --noise-interval")
    return AlphaCost(args.alpha, args.peak_region, args.noise_interval)


def _grid(args, y: Signal) -> HGrid:
    grid = default_h_grid(y, args.h_count)
    if args.h_min is not None or args.h_max is not None:
        grid = HGrid(args.h_min or grid.h_min, args.h_max or grid.h_max, args.h_count)
    return grid


def _scsa(args, y: Signal, reference: Signal | None):
    if args.h is not None:
        cfg = _cost(args, y, args.nu)
        try:
            row, y_h = evaluate_h(y, args.h, cfg)
            cost = row.cost
        except DegenerateInput as exc:
            log.warning("cost undefined at fixed h: %s", exc)
            spec, y_h = scsa_transform(y, args.h)
            row, cost = None, float("nan")
        n_h = row.n_h if row else spec.n_h
        return y_h, f"h_star={fmt(args.h)} n_h={n_h} cost={fmt(cost)}", [row] if row else []

    grid = _grid(args, y)
    nus = NU_SWEEP if (reference is not None and args.method == "cscsa" and args.mu is None) else [args.nu]
    best = None
    for nu in nus:
        res = scan_h(y, grid, _cost(args, y, nu), args.workers)
        score = snr_out(reference, res.y_h) if reference is not None else 0.0
        if best is None or score > best[0]:
            best = (score, nu, res)
    _, nu, res = best
    line = f"h_star={fmt(res.h_star)} n_h={res.n_h} cost={fmt(res.cost)}"
    if len(nus) > 1:
        line += f" nu={nu}"
    return res.y_h, line, res.trace


def cmd_denoise(args) -> int:
    t, y = read_csv(args.input)
    reference = read_signal(args.reference) if args.reference else None
    if reference is not None and reference.n != y.n:
        raise MalformedCSV("reference length differs from input")
    if args.method in ("cscsa", "alpha_scsa"):
        y_h, line, trace = _scsa(args, y, reference)
        if args.trace:
            write_columns(args.trace, ["h", "cost", "n_h", "fidelity", "penalty"],
                          list(zip(*[(r.h, r.cost, r.n_h, r.fidelity, r.penalty) for r in trace])) or [[]] * 5)
        print(line)
    elif args.method == "sg":
        y_h = savitzky_golay(y, SGParams(args.window or 29, args.order))
    else:
        y_h = moving_average(y, args.window or 5)
    write_signal(args.out, y_h, t)
    return EXIT_OK


def cmd_bench(args) -> int:
    overrides = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep or "." not in key:
            raise UsageError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        overrides[key] = value
    cfg = bench.BenchConfig.from_file(args.config, overrides)
    rows = bench.run_bench(cfg, args.workers)
    out, summary = bench.write_bench(rows, args.out, args.summary)
    print(f"rows={len(rows)} out={out} summary={summary}")
    return EXIT_OK


def cmd_curvature(args) -> int:
    t, y, delta = read_table(args.input)
    if y.size < 3:
        raise MalformedCSV("need at least 3 samples")
    prof = discrete_curvature(y, delta)
    print(f"total_curvature={fmt(prof.total)}")
    if args.profile:
        write_columns(args.profile, ["t", "y"], [t[1:-1], prof.values])
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "denoise": cmd_denoise, "bench": cmd_bench, "curvature": cmd_curvature}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"scsa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedCSV, InvalidSignal) as exc:
        print(f"scsa: malformed data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"scsa: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalFailure, DegenerateInput, np.linalg.LinAlgError) as exc:
        print(f"scsa: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InvalidParams, InvalidInput, SCSAError) as exc:
        print(f"scsa: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

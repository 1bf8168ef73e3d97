"""CSV interchange: a ``t,y`` header and one row per sample."""

from __future__ import annotations

import csv
import os
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .signal import Signal

OUTPUT_DIR_ENV = "SCSA_OUTPUT_DIR"


class MalformedCSV(InvalidInput):
    pass


def fmt(value) -> str:
    """Shortest decimal that round-trips to the same float."""
    return repr(float(value))


def resolve_output(path) -> Path:
    """Relative output paths land in ``$SCSA_OUTPUT_DIR`` when it is set."""
    path = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        return Path(base) / path
    return path


def read_table(path, rtol: float = 1e-6) -> tuple[np.ndarray, np.ndarray, float]:
    """Parse a ``t,y`` CSV into ``(t, y, delta)``; ``t`` must be uniformly spaced."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except UnicodeDecodeError as exc:
        raise MalformedCSV(f"{path}: not a text file") from exc
    if not rows or [c.strip() for c in rows[0]] != ["t", "y"]:
        raise MalformedCSV(f"{path}: expected header 't,y'")
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise MalformedCSV(f"{path}: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != 2 or data.shape[0] < 2:
        raise MalformedCSV(f"{path}: need at least two rows of two columns")
    if not np.all(np.isfinite(data)):
        raise MalformedCSV(f"{path}: non-finite values")
    t, y = data[:, 0], data[:, 1]
    steps = np.diff(t)
    delta = (t[-1] - t[0]) / (t.size - 1)
    if not delta > 0 or np.any(np.abs(steps - delta) > rtol * max(abs(delta), np.abs(t).max())):
        raise MalformedCSV(f"{path}: t column is not uniformly increasing")
    return t, y, float(delta)


def read_csv(path) -> tuple[np.ndarray, Signal]:
    """Load a ``t,y`` CSV as ``(t, signal)``."""
    t, y, delta = read_table(path)
    try:
        return t, Signal(y, delta, t[0])
    except ValueError as exc:
        raise MalformedCSV(f"{path}: {exc}") from exc


def read_signal(path) -> Signal:
    return read_csv(path)[1]


def write_columns(path, header, columns):
    path = resolve_output(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([fmt(v) for v in row])
    return path


def write_signal(path, y: Signal, t=None):
    """Write ``y``; pass the original ``t`` column to reproduce it verbatim."""
    return write_columns(path, ["t", "y"], [y.t if t is None else t, y.samples])

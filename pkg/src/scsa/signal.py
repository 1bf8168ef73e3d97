"""Uniformly sampled real signal container."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, InvalidSignal

MIN_SAMPLES = 8


@dataclass(frozen=True, eq=False)
class Signal:
    """Real samples on a uniform grid.

    Parameters
    ----------
    samples : array_like
        Signal values ``y(t_i)``.
    delta : float
        Sampling interval.
    t_start : float
        Time of the first sample; only used for I/O and plotting.
    """

    samples: np.ndarray
    delta: float = 1.0
    t_start: float = 0.0

    def __post_init__(self):
        y = np.array(self.samples, dtype=float)
        if y.ndim != 1:
            raise InvalidSignal(f"samples must be 1-D, got shape {y.shape}")
        if not np.all(np.isfinite(y)):
            raise InvalidSignal("samples must be finite")
        if not (np.isfinite(self.delta) and self.delta > 0):
            raise InvalidSignal(f"delta must be positive, got {self.delta}")
        if y.size < MIN_SAMPLES:
            raise InvalidSignal(f"need at least {MIN_SAMPLES} samples, got {y.size}")
        y.setflags(write=False)
        object.__setattr__(self, "samples", y)
        object.__setattr__(self, "delta", float(self.delta))

    def __len__(self):
        return self.samples.size

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return self.t_start + self.delta * np.arange(self.n)

    def with_samples(self, samples) -> Signal:
        """Same grid, new values."""
        return Signal(samples, self.delta, self.t_start)


def as_array(y, delta: float | None = None, min_len: int = 1) -> tuple[np.ndarray, float]:
    """Return ``(samples, delta)`` for a Signal or a plain array.

    Lightweight entry point for functions (curvature, filters, metrics)
    that also make sense on short arrays.
    """
    if isinstance(y, Signal):
        arr, d = y.samples, y.delta
        if delta is not None and not np.isclose(delta, d):
            raise InvalidInput(f"delta {delta} conflicts with signal delta {d}")
    else:
        arr = np.asarray(y, dtype=float)
        d = 1.0 if delta is None else float(delta)
        if arr.ndim != 1:
            raise InvalidSignal(f"samples must be 1-D, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidSignal("samples must be finite")
        if not d > 0:
            raise InvalidSignal(f"delta must be positive, got {d}")
    if arr.size < min_len:
        raise InvalidSignal(f"need at least {min_len} samples, got {arr.size}")
    return arr, d


def check_same_grid(a, b) -> tuple[np.ndarray, np.ndarray]:
    x, dx = as_array(a)
    y, dy = as_array(b)
    if x.shape != y.shape:
        raise InvalidInput(f"length mismatch: {x.size} vs {y.size}")
    if isinstance(a, Signal) and isinstance(b, Signal) and not np.isclose(dx, dy):
        raise InvalidInput(f"delta mismatch: {dx} vs {dy}")
    return x, y

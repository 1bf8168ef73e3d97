"""Reference smoothers: Savitzky-Golay and centred moving average."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .signal import Signal, as_array


@dataclass(frozen=True)
class SGParams:
    window: int = 29
    order: int = 4

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidParams(f"window must be odd and >= 3, got {self.window}")
        if not 0 <= self.order < self.window:
            raise InvalidParams(f"order must satisfy 0 <= order < window, got {self.order}")


def savgol_weights(window: int, order: int) -> np.ndarray:
    """Least-squares smoothing weights for every evaluation position.

    Row ``j`` holds the weights that, dotted with a window of samples,
    evaluate the fitted polynomial at offset ``j`` inside the window. The
    middle row gives the classic symmetric interior coefficients.
    """
    SGParams(window, order)
    x = np.arange(window) - window // 2
    V = np.vander(x, order + 1, increasing=True)
    return V @ np.linalg.pinv(V)


def savgol_coeffs(window: int, order: int) -> np.ndarray:
    return savgol_weights(window, order)[window // 2]


def savitzky_golay(y, p: SGParams = SGParams(), delta: float | None = None):
    """Savitzky-Golay smoothing with polynomial-fit edges.

    Interior samples use the centred window. The first and last
    ``window // 2`` samples are evaluated from the polynomial fitted to the
    first (last) ``window`` samples, so the output length equals the input.
    """
    arr, _ = as_array(y, delta)
    w, half = p.window, p.window // 2
    if arr.size < w:
        raise InvalidParams(f"signal shorter than window ({arr.size} < {w})")
    W = savgol_weights(w, p.order)
    out = np.empty_like(arr)
    # interior: correlate with the symmetric centre row
    windows = np.lib.stride_tricks.sliding_window_view(arr, w)
    out[half:arr.size - half] = windows @ W[half]
    out[:half] = W[:half] @ arr[:w]
    out[arr.size - half:] = W[half + 1:] @ arr[-w:]
    return _like(y, out)


def moving_average(y, window: int, delta: float | None = None):
    """Centred mean over ``window`` samples, clipped to the signal at the edges."""
    arr, _ = as_array(y, delta)
    if window < 1 or window % 2 == 0:
        raise InvalidParams(f"window must be a positive odd integer, got {window}")
    if arr.size < window:
        raise InvalidParams(f"signal shorter than window ({arr.size} < {window})")
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(arr)))
    idx = np.arange(arr.size)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, arr.size)
    return _like(y, (csum[hi] - csum[lo]) / (hi - lo))


def _like(y, values):
    return y.with_samples(values) if isinstance(y, Signal) else values

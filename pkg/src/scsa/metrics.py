"""Denoising quality metrics and peak measurements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfiniteSNR, InvalidInput, PeakNotFound
from .signal import as_array, check_same_grid


def mse(a, b) -> float:
    x, y = check_same_grid(a, b)
    return float(np.mean((x - y) ** 2))


def snr_out(y_clean, y_h, convention: str = "denoised") -> float:
    """Output SNR in dB.

    ``convention="denoised"`` (default) puts the power of the denoised signal
    in the numerator, ``10 log10(sum y_h^2 / sum (y - y_h)^2)``;
    ``"clean"`` uses ``sum y^2`` instead, the more common definition.

    Returns ``-inf`` when the numerator is zero and raises
    :class:`InfiniteSNR` when the residual is exactly zero.
    """
    y, yh = check_same_grid(y_clean, y_h)
    if convention == "denoised":
        num = np.sum(yh**2)
    elif convention == "clean":
        num = np.sum(y**2)
    else:
        raise InvalidInput(f"unknown SNR convention {convention!r}")
    den = np.sum((y - yh) ** 2)
    if den == 0:
        raise InfiniteSNR("denoised signal equals the reference")
    if num == 0:
        return float("-inf")
    return float(10.0 * np.log10(num / den))


@dataclass(frozen=True)
class PeakInfo:
    height: float
    index: int
    fwhm: float


def detect_peak(y, delta: float | None = None) -> PeakInfo:
    """Height, position and full width at half maximum of the dominant peak.

    Half-height crossings are searched outward from the first argmax and
    located by linear interpolation between the bracketing samples.
    """
    arr, d = as_array(y, delta, min_len=3)
    i = int(np.argmax(arr))
    top = float(arr[i])
    if i == 0 or i == arr.size - 1:
        raise PeakNotFound("maximum lies on the boundary")
    half = top / 2.0

    left = np.flatnonzero(arr[:i] < half)
    right = np.flatnonzero(arr[i + 1:] < half)
    if left.size == 0 or right.size == 0:
        raise PeakNotFound("no half-height crossing on one side of the peak")
    lo = left[-1]
    hi = i + 1 + right[0]
    x_left = lo + (half - arr[lo]) / (arr[lo + 1] - arr[lo])
    x_right = hi - 1 + (arr[hi - 1] - half) / (arr[hi - 1] - arr[hi])
    return PeakInfo(height=top, index=i, fwhm=float((x_right - x_left) * d))


def _relative_percent(value: float, reference: float) -> float:
    if reference == 0:
        raise InvalidInput("reference value is zero")
    return abs(value - reference) / abs(reference) * 100.0


def peak_height_error(denoised: PeakInfo, clean: PeakInfo) -> float:
    """``|M_h - M_c| / M_c * 100``."""
    return _relative_percent(denoised.height, clean.height)


def peak_width_error(denoised: PeakInfo, clean: PeakInfo) -> float:
    """``|W_h - W_c| / W_c * 100``."""
    return _relative_percent(denoised.fwhm, clean.fwhm)

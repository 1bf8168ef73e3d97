"""Synthetic test signals and noise injection."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInput, InvalidInput, InvalidParams
from .signal import MIN_SAMPLES, Signal


@dataclass(frozen=True)
class GaussianPeak:
    amplitude: float
    position: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidParams(f"peak width must be positive, got {self.width}")


# Single-peak benchmark: M=1, u=5, sigma=15, A=2. The time axis is not part of
# the benchmark definition; [-95, 105) centres the peak with +-6.7 sigma margin.
SINGLE_PEAK = (GaussianPeak(amplitude=2.0, position=5.0, width=15.0),)
SINGLE_PEAK_SPAN = (-95.0, 105.0)

# Five peaks of different heights and widths, the 2nd and 3rd overlapping.
FIVE_PEAKS = (
    GaussianPeak(1.0, 80.0, 12.0),
    GaussianPeak(2.0, 170.0, 8.0),
    GaussianPeak(1.5, 200.0, 14.0),
    GaussianPeak(3.0, 320.0, 10.0),
    GaussianPeak(1.2, 420.0, 20.0),
)
FIVE_PEAKS_SPAN = (0.0, 512.0)


def gaussian_peaks(peaks: Sequence[GaussianPeak], n: int, t_start: float, delta: float) -> Signal:
    """Sample ``sum_i A_i exp(-(t - u_i)^2 / (2 sigma_i^2))`` on a uniform grid."""
    if not peaks:
        raise InvalidParams("need at least one peak")
    if n < MIN_SAMPLES:
        raise InvalidParams(f"n must be >= {MIN_SAMPLES}")
    if not delta > 0:
        raise InvalidParams("delta must be positive")
    t = t_start + delta * np.arange(n)
    y = np.zeros(n)
    for p in peaks:
        if not p.width > 0:
            raise InvalidParams(f"peak width must be positive, got {p.width}")
        y += p.amplitude * np.exp(-((t - p.position) ** 2) / (2.0 * p.width**2))
    return Signal(y, delta, t_start)


def peaks_on_span(peaks: Sequence[GaussianPeak], n: int, span: tuple[float, float]) -> Signal:
    """:func:`gaussian_peaks` with ``n`` samples covering ``[span[0], span[1])``."""
    lo, hi = span
    return gaussian_peaks(peaks, n, lo, (hi - lo) / n)


def single_peak(n: int = 512) -> Signal:
    return peaks_on_span(SINGLE_PEAK, n, SINGLE_PEAK_SPAN)


def five_peaks(n: int = 512) -> Signal:
    return peaks_on_span(FIVE_PEAKS, n, FIVE_PEAKS_SPAN)


def sech2(n: int = 512, half_width: float = 16.0) -> Signal:
    """``2 sech^2(t)`` on ``[-half_width, half_width)``; reflectionless at ``h = 1``."""
    delta = 2.0 * half_width / n
    t = -half_width + delta * np.arange(n)
    return Signal(2.0 / np.cosh(t) ** 2, delta, -half_width)


class StandardSignal(str, enum.Enum):
    DOPPLER = "doppler"
    BLOCKS = "blocks"
    BUMPS = "bumps"
    PIECEWISE_REGULAR = "piecewise_regular"
    HEAVISINE = "heavisine"


# "sing" has no published definition in this benchmark family; it is taken
# to mean the HeaviSine waveform.
ALIASES = {"sing": StandardSignal.HEAVISINE, "piece_regular": StandardSignal.PIECEWISE_REGULAR,
           "piecewise-regular": StandardSignal.PIECEWISE_REGULAR}

_POS = np.array([0.1, 0.13, 0.15, 0.23, 0.25, 0.40, 0.44, 0.65, 0.76, 0.78, 0.81])
_BUMP_HGT = np.array([4, 5, 3, 4, 5, 4.2, 2.1, 4.3, 3.1, 5.1, 4.2])
_BUMP_WTH = np.array([0.005, 0.005, 0.006, 0.01, 0.01, 0.03, 0.01, 0.01, 0.005, 0.008, 0.005])
_BLOCK_HGT = np.array([4, -5, 3, -4, 5, -4.2, 2.1, 4.3, -3.1, 2.1, -4.2])


def _bumps(t):
    return sum(h / (1 + np.abs((t - p) / w)) ** 4 for p, h, w in zip(_POS, _BUMP_HGT, _BUMP_WTH))


def _blocks(t):
    return sum((1 + np.sign(t - p)) * h / 2 for p, h in zip(_POS, _BLOCK_HGT))


def _heavisine(t):
    return 4 * np.sin(4 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _doppler(t):
    return np.sqrt(t * (1 - t)) * np.sin(2 * np.pi * 1.05 / (t + 0.05))


def _piecewise_regular(t):
    # WaveLab 'Piece-Regular', with its 1-based MATLAB ranges shifted to 0-based
    n = t.size
    n12, n7, n5, n3, n2, n20 = n // 12, n // 7, n // 5, n // 3, n // 2, n // 20
    sig1 = -15 * _bumps(t)
    sig2 = -np.exp(4 * np.arange(1, n12 + 1) / n12)
    sig5 = np.exp(4 * np.arange(1, n7 + 1) / n7) - np.exp(4)
    t3 = np.arange(1, n3 + 1) / n3
    sig6 = -70 * np.exp(-((t3 - 0.5) ** 2) / (2 * (6 / 40) ** 2))

    sig = np.zeros(n)
    sig[:n7] = sig6[:n7]
    sig[n7:n5] = 0.5 * sig6[n7:n5]
    sig[n5:n3] = sig6[n5:n3]
    sig[n3:n2] = sig1[n3:n2]
    sig[n2:n2 + n12] = sig2
    sig[n2 + n12:n2 + 2 * n12][::-1] = sig2
    lo = n2 + 2 * n12 + n20
    hi = n2 + 2 * n12 + 3 * n20
    sig[lo:hi] = -25.0
    sig[hi:hi + n7] = sig5
    rest = n - 5 * n5
    if rest:
        sig[5 * n5:] = sig[rest - 1::-1]
    return sig.mean() - sig


_GENERATORS = {
    StandardSignal.DOPPLER: _doppler,
    StandardSignal.BLOCKS: _blocks,
    StandardSignal.BUMPS: _bumps,
    StandardSignal.PIECEWISE_REGULAR: _piecewise_regular,
    StandardSignal.HEAVISINE: _heavisine,
}


def standard_test_signal(kind: StandardSignal | str, n: int = 512) -> Signal:
    """Donoho-Johnstone benchmark waveform on ``t = (1..n)/n``, scaled to ``max|y| = 1``."""
    if isinstance(kind, str) and not isinstance(kind, StandardSignal):
        key = kind.lower()
        try:
            kind = ALIASES[key] if key in ALIASES else StandardSignal(key)
        except ValueError:
            raise InvalidParams(f"unknown test signal {kind!r}") from None
    if n < MIN_SAMPLES:
        raise InvalidParams(f"n must be >= {MIN_SAMPLES}")
    t = np.arange(1, n + 1) / n
    y = np.asarray(_GENERATORS[kind](t), dtype=float)
    return Signal(y / np.abs(y).max(), 1.0 / n, t[0])


def add_white_noise(y: Signal, level_percent: float, seed: int = 0) -> Signal:
    """Add iid Gaussian noise with std ``level_percent / 100 * max|y|``."""
    if not 0 < level_percent <= 100:
        raise InvalidParams(f"noise level must be in (0, 100], got {level_percent}")
    sigma = level_percent / 100.0 * np.abs(y.samples).max()
    rng = np.random.default_rng(seed)
    return y.with_samples(y.samples + sigma * rng.standard_normal(y.n))


def noise_sigma(y: Signal, level_percent: float) -> float:
    return level_percent / 100.0 * float(np.abs(y.samples).max())


def input_snr_db(y: Signal, noise) -> float:
    """Clean-power over noise-power ratio in dB."""
    noise = np.asarray(noise, dtype=float)
    return float(10.0 * np.log10(np.sum(y.samples**2) / np.sum(noise**2)))


def mix_noise(
    y: Signal,
    a,
    b,
    target_snr_db: float,
    weights: tuple[float, float] = (1.0, 1.0),
) -> tuple[Signal, float, float]:
    """Corrupt ``y`` with ``k1 a + k2 b`` scaled to a target input SNR.

    The relative weights default to equal, so ``k1 == k2``; a single scale
    factor is then solved from ``10 log10(sum y^2 / sum n^2) = target``.
    Records longer than ``y`` are truncated.

    Returns
    -------
    noisy : Signal
    k1, k2 : float
        Coefficients applied to the raw records.
    """
    if not np.isfinite(target_snr_db):
        raise InvalidParams(f"target SNR must be finite, got {target_snr_db}")
    a = np.asarray(a.samples if isinstance(a, Signal) else a, dtype=float)
    b = np.asarray(b.samples if isinstance(b, Signal) else b, dtype=float)
    if a.size < y.n or b.size < y.n:
        raise InvalidInput(f"noise records must have at least {y.n} samples")
    a, b = a[: y.n], b[: y.n]
    if not np.any(a) or not np.any(b):
        raise DegenerateInput("noise records must have non-zero power")
    w1, w2 = weights
    mixed = w1 * a + w2 * b
    p_noise = np.sum(mixed**2)
    p_sig = np.sum(y.samples**2)
    if p_noise == 0 or p_sig == 0:
        raise DegenerateInput("zero signal or mixture power")
    k = np.sqrt(p_sig / (p_noise * 10.0 ** (target_snr_db / 10.0)))
    return y.with_samples(y.samples + k * mixed), float(k * w1), float(k * w2)


def synthetic_noise_record(n: int, seed: int = 0, color: str = "white") -> np.ndarray:
    """Stand-in for a recorded noise track.

    ``"white"`` is iid Gaussian; ``"brown"`` is a mean-removed random walk,
    a crude model of slow baseline wander such as electrode motion.
    """
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n)
    if color == "white":
        return z
    if color == "brown":
        walk = np.cumsum(z)
        return walk - walk.mean()
    raise InvalidParams(f"unknown noise colour {color!r}")

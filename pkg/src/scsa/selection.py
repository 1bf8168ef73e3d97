"""Choosing the semi-classical parameter ``h`` by scanning a cost over a grid.

Two costs are supported:

* curvature (C-SCSA): ``sum (y_noisy - y_h)^2 + mu * sum k(y_h)``;
* peak/SNR (alpha-SCSA): squared residual restricted to known peak regions
  plus ``alpha / SNR(y_h)`` with the SNR estimated on a noise-only interval.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .curvature import total_curvature
from .errors import DegenerateInput, InvalidInput, InvalidParams, NumericalFailure, SCSAError
from .signal import Signal, as_array, check_same_grid
from .spectral import scsa_transform

log = logging.getLogger(__name__)

TIE_RTOL = 1e-9


@dataclass(frozen=True)
class CurvatureCost:
    """Curvature-penalized cost. Give ``mu`` directly, or ``nu`` for auto-scaling."""

    mu: float | None = None
    nu: int = 0

    def __post_init__(self):
        if self.mu is not None and not self.mu > 0:
            raise InvalidParams(f"mu must be positive, got {self.mu}")
        if int(self.nu) != self.nu:
            raise InvalidParams(f"nu must be an integer, got {self.nu}")


@dataclass(frozen=True)
class AlphaCost:
    """Peak-region residual plus ``alpha / SNR``.

    Intervals are inclusive sample-index pairs ``(first, last)``.
    """

    alpha: float
    peak_regions: Sequence[tuple[int, int]]
    noise_interval: tuple[int, int]

    def __post_init__(self):
        if not self.alpha > 0:
            raise InvalidParams(f"alpha must be positive, got {self.alpha}")
        if not self.peak_regions:
            raise InvalidParams("need at least one peak region")
        for a, b in [*self.peak_regions, self.noise_interval]:
            if not 0 <= a <= b:
                raise InvalidParams(f"invalid interval [{a}, {b}]")

    def check_bounds(self, n: int):
        for a, b in [*self.peak_regions, self.noise_interval]:
            if b >= n:
                raise InvalidParams(f"interval [{a}, {b}] exceeds signal length {n}")


CostConfig = Union[CurvatureCost, AlphaCost]


def cscsa_terms(y_noisy, y_h) -> tuple[float, float]:
    """``(sum of squared residuals, total curvature of y_h)``."""
    x, yh = check_same_grid(y_noisy, y_h)
    _, delta = as_array(y_h)
    return float(np.sum((x - yh) ** 2)), total_curvature(yh, delta)


def cost_cscsa(y_noisy, y_h, mu: float) -> float:
    fidelity, curv = cscsa_terms(y_noisy, y_h)
    return fidelity + mu * curv


def auto_mu(y_noisy, nu: int = 0) -> float:
    """``mu = max|y| / sum k(y) * 10**nu``, from the noisy input's own curvature."""
    arr, delta = as_array(y_noisy, min_len=3)
    curv = total_curvature(arr, delta)
    # second differences at rounding level count as a straight line
    flat = np.abs(np.diff(arr, 2)).max() <= 64 * np.finfo(float).eps * np.abs(arr).max()
    if curv == 0 or flat:
        raise DegenerateInput("input has zero total curvature; supply mu directly")
    return float(np.abs(arr).max() / curv * 10.0**nu)


def snr_estimate(y_h, noise_interval: tuple[int, int]) -> float:
    """``max|y_h|`` over the population std of ``y_h`` on an inclusive index interval."""
    arr, _ = as_array(y_h)
    a, b = noise_interval
    if b - a + 1 < 2 or a < 0 or b >= arr.size:
        raise InvalidParams(f"noise interval [{a}, {b}] invalid for length {arr.size}")
    spread = float(np.std(arr[a:b + 1]))
    if spread == 0:
        raise DegenerateInput("zero spread on the noise interval")
    return float(np.abs(arr).max() / spread)


def alpha_terms(y_noisy, y_h, cfg: AlphaCost) -> tuple[float, float]:
    x, yh = check_same_grid(y_noisy, y_h)
    cfg.check_bounds(x.size)
    fidelity = sum(float(np.sum((x[a:b + 1] - yh[a:b + 1]) ** 2)) for a, b in cfg.peak_regions)
    return fidelity, cfg.alpha / abs(snr_estimate(yh, cfg.noise_interval))


def cost_alpha_scsa(y_noisy, y_h, cfg: AlphaCost) -> float:
    return sum(alpha_terms(y_noisy, y_h, cfg))


@dataclass(frozen=True)
class HGrid:
    h_min: float
    h_max: float
    count: int = 50

    def __post_init__(self):
        if not 0 < self.h_min < self.h_max:
            raise InvalidParams(f"need 0 < h_min < h_max, got {self.h_min}, {self.h_max}")
        if self.count < 2:
            raise InvalidParams(f"count must be >= 2, got {self.count}")

    @property
    def values(self) -> np.ndarray:
        v = np.geomspace(self.h_min, self.h_max, self.count)
        v[0], v[-1] = self.h_min, self.h_max
        return v


def default_h_grid(y: Signal, count: int = 50, span: float = 200.0) -> HGrid:
    """Geometric grid ending at the scale where only ~1 eigenvalue survives.

    ``h_max = (L / pi) sqrt(max(y_shifted))`` with ``L = N delta``, and
    ``h_min = h_max / span``.
    """
    arr = y.samples
    shifted = arr - arr.min() if arr.min() < 0 else arr
    top = float(shifted.max())
    if top <= 0:
        raise DegenerateInput("signal is identically zero after the positivity shift")
    h_max = y.n * y.delta / np.pi * np.sqrt(top)
    return HGrid(float(h_max / span), float(h_max), count)


@dataclass(frozen=True)
class TraceRow:
    h: float
    cost: float
    n_h: int
    fidelity: float
    penalty: float


@dataclass(frozen=True, eq=False)
class DenoiseResult:
    h_star: float
    y_h: Signal
    n_h: int
    cost: float
    trace: list[TraceRow]
    mu: float | None = None
    failures: list[tuple[float, str]] = field(default_factory=list)


def _resolve(y_noisy: Signal, cfg: CostConfig):
    """Return a function mapping ``y_h`` to ``(fidelity, penalty)``, plus ``mu``."""
    if isinstance(cfg, CurvatureCost):
        mu = cfg.mu if cfg.mu is not None else auto_mu(y_noisy, cfg.nu)

        def terms(y_h):
            fidelity, curv = cscsa_terms(y_noisy, y_h)
            return fidelity, mu * curv

        return terms, mu
    if isinstance(cfg, AlphaCost):
        cfg.check_bounds(y_noisy.n)
        return (lambda y_h: alpha_terms(y_noisy, y_h, cfg)), None
    raise InvalidParams(f"unsupported cost config {cfg!r}")


def evaluate_h(y_noisy: Signal, h: float, cfg: CostConfig) -> tuple[TraceRow, Signal]:
    terms, _ = _resolve(y_noisy, cfg)
    return _evaluate(y_noisy, h, terms)


def _evaluate(y_noisy, h, terms):
    spec, y_h = scsa_transform(y_noisy, h)
    fidelity, penalty = terms(y_h)
    return TraceRow(float(h), fidelity + penalty, spec.n_h, fidelity, penalty), y_h


def pick_minimum(trace: Sequence[TraceRow], rtol: float = TIE_RTOL) -> int:
    """Index of the minimal cost; near-ties go to the largest ``h``."""
    costs = np.array([r.cost for r in trace])
    best = costs.min()
    tied = np.flatnonzero(costs <= best + rtol * abs(best))
    return int(max(tied, key=lambda i: trace[i].h))


def scan_h(y_noisy: Signal, grid: HGrid, cfg: CostConfig, workers: int = 1) -> DenoiseResult:
    """Evaluate the cost at every grid point and keep the minimizer.

    ``workers > 1`` evaluates grid points in a thread pool; results are
    collected in grid order, so the outcome matches a sequential scan.
    """
    terms, mu = _resolve(y_noisy, cfg)
    hs = grid.values

    def run(h):
        try:
            return _evaluate(y_noisy, h, terms)
        except SCSAError as exc:
            return exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, hs))
    else:
        outcomes = [run(h) for h in hs]

    trace, recon, failures = [], [], []
    for h, out in zip(hs, outcomes):
        if isinstance(out, Exception):
            log.warning("h=%g failed: %s", h, out)
            failures.append((float(h), str(out)))
        else:
            trace.append(out[0])
            recon.append(out[1])
    if not trace:
        raise NumericalFailure(f"every grid point failed: {failures}")
    i = pick_minimum(trace)
    best = trace[i]
    return DenoiseResult(best.h, recon[i], best.n_h, best.cost, trace, mu, failures)


def denoise(
    y_noisy: Signal,
    cfg: CostConfig | None = None,
    grid: HGrid | None = None,
    workers: int = 1,
) -> DenoiseResult:
    """C-SCSA with auto-scaled ``mu`` (``nu = 0``) over the default grid unless overridden."""
    if not isinstance(y_noisy, Signal):
        raise InvalidInput("denoise expects a Signal")
    cfg = CurvatureCost() if cfg is None else cfg
    grid = default_h_grid(y_noisy) if grid is None else grid
    return scan_h(y_noisy, grid, cfg, workers)

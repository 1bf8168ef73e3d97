"""Discrete Schrödinger operator and the SCSA reconstruction.

The signal ``y`` is used as the potential of ``-h^2 d^2/dt^2 - y``. Its
negative eigenvalues ``-kappa_n^2`` and L2-normalized eigenfunctions
``psi_n`` give back the signal as ``y_h = 4 h sum_n kappa_n psi_n^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.linalg import toeplitz

from .errors import InvalidGrid, InvalidParams, InvalidSignal, NumericalFailure
from .signal import MIN_SAMPLES, Signal


def fourier_diff2_matrix(n: int, delta: float) -> np.ndarray:
    """Periodic Fourier pseudo-spectral second-derivative matrix.

    Parameters
    ----------
    n : int
        Number of grid points, even and at least 8.
    delta : float
        Grid spacing. The implied period is ``n * delta``.

    Returns
    -------
    ndarray, shape (n, n)
        Symmetric negative semidefinite matrix whose rows sum to zero.

    Notes
    -----
    Off-diagonal entries on the ``2 pi / n`` grid are
    ``-(-1)^k / (2 sin^2(k pi / n))`` (Trefethen, *Spectral Methods in
    MATLAB*, ch. 3), rescaled by ``(2 pi / L)^2``. The diagonal is set to
    minus the off-diagonal row sum, which equals ``-pi^2/(3 hx^2) - 1/6``
    analytically and keeps constants exactly in the null space.
    """
    if int(n) != n or n < MIN_SAMPLES or n % 2:
        raise InvalidGrid(f"n must be an even integer >= {MIN_SAMPLES}, got {n}")
    if not delta > 0:
        raise InvalidGrid(f"delta must be positive, got {delta}")
    n = int(n)
    k = np.arange(1, n)
    col = np.empty(n)
    col[1:] = -0.5 * (-1.0) ** k / np.sin(np.pi * k / n) ** 2
    col[0] = -col[1:].sum()
    scale = (2.0 * np.pi / (n * delta)) ** 2
    return scale * toeplitz(col)


def _shift_for(y: np.ndarray) -> float:
    lo = float(y.min())
    return -lo if lo < 0 else 0.0


def assemble_operator(y: Signal, h: float) -> tuple[np.ndarray, float]:
    """Build ``A = -h^2 D - diag(y + shift)``.

    Negative signals are lifted by ``shift = -min(y)`` so the potential is
    non-negative; the shift is undone in :func:`reconstruct`.
    """
    if not isinstance(y, Signal):
        raise InvalidSignal("assemble_operator expects a Signal")
    if not (np.isfinite(h) and h > 0):
        raise InvalidParams(f"h must be positive, got {h}")
    shift = _shift_for(y.samples)
    A = -(h * h) * fourier_diff2_matrix(y.n, y.delta)
    A[np.diag_indices_from(A)] -= y.samples + shift
    return A, shift


@dataclass(frozen=True, eq=False)
class SchrodingerSpectrum:
    """Negative spectrum of the operator for one value of ``h``.

    ``kappas`` are sorted in non-increasing order and column ``n`` of
    ``eigenfunctions`` is normalized so that ``sum(psi**2) * delta == 1``.
    """

    h: float
    kappas: np.ndarray
    eigenfunctions: np.ndarray
    delta: float
    shift: float = 0.0

    def __post_init__(self):
        kappas = np.asarray(self.kappas, dtype=float)
        psi = np.asarray(self.eigenfunctions, dtype=float)
        if psi.ndim != 2 or psi.shape[1] != kappas.size:
            raise InvalidParams("eigenfunction columns must match kappas")
        if np.any(kappas <= 0):
            raise InvalidParams("kappas must be positive")
        if np.any(np.diff(kappas) > 0):
            raise InvalidParams("kappas must be sorted in non-increasing order")
        if not self.h > 0 or not self.delta > 0:
            raise InvalidParams("h and delta must be positive")
        object.__setattr__(self, "kappas", kappas)
        object.__setattr__(self, "eigenfunctions", psi)

    @property
    def n_h(self) -> int:
        return self.kappas.size

    @property
    def eigenvalues(self) -> np.ndarray:
        return -self.kappas**2


def negative_eigenpairs(
    A: np.ndarray,
    delta: float,
    *,
    h: float,
    shift: float = 0.0,
    tol: float | None = None,
) -> SchrodingerSpectrum:
    """Eigenpairs of symmetric ``A`` with eigenvalue below ``-tol``.

    ``tol`` defaults to ``1e-12 * max|A|``. Each eigenfunction is scaled to
    unit discrete L2 norm and its sign fixed so the largest-magnitude entry
    is positive.
    """
    A = np.asarray(A, dtype=float)
    if tol is None:
        tol = 1e-12 * float(np.abs(A).max(initial=0.0))
    try:
        lam, vec = scipy.linalg.eigh(A, driver="evd", check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"eigendecomposition failed: {exc}") from exc

    keep = lam < -tol
    # eigh sorts ascending, so the most negative (largest kappa) comes first
    kappas = np.sqrt(-lam[keep])
    psi = vec[:, keep] / np.sqrt(delta)
    if psi.shape[1]:
        rows = np.argmax(np.abs(psi), axis=0)
        signs = np.sign(psi[rows, np.arange(psi.shape[1])])
        psi *= signs
    return SchrodingerSpectrum(h=h, kappas=kappas, eigenfunctions=psi, delta=delta, shift=shift)


def reconstruct_raw(spec: SchrodingerSpectrum) -> np.ndarray:
    """``4 h sum kappa psi^2`` before the positivity shift is removed."""
    return 4.0 * spec.h * (spec.eigenfunctions**2 @ spec.kappas)


def reconstruct(spec: SchrodingerSpectrum, t_start: float = 0.0) -> Signal:
    return Signal(reconstruct_raw(spec) - spec.shift, spec.delta, t_start)


def scsa_transform(y: Signal, h: float) -> tuple[SchrodingerSpectrum, Signal]:
    """Run the full SCSA pipeline for a single ``h``."""
    A, shift = assemble_operator(y, h)
    spec = negative_eigenpairs(A, y.delta, h=h, shift=shift)
    return spec, reconstruct(spec, y.t_start)

import numpy as np
import pytest

from scsa.errors import InfiniteSNR, InvalidInput, PeakNotFound
from scsa.metrics import PeakInfo, detect_peak, mse, peak_height_error, peak_width_error, snr_out
from scsa.signal import Signal
from scsa.signals import single_peak


def test_mse_example():
    assert mse(np.array([0.0, 3.0]), np.array([4.0, 3.0])) == 8.0


def test_mse_grid_mismatch():
    with pytest.raises(InvalidInput):
        mse(Signal(np.zeros(8), 1.0), Signal(np.zeros(8), 0.5))


class TestSNR:
    def test_small_perturbation(self):
        y = np.ones(100)
        yh = y.copy()
        yh[0] += 1e-3
        expected = 10 * np.log10(np.sum(yh**2) / 1e-6)
        assert snr_out(y, yh) == pytest.approx(expected, rel=1e-9)
        assert snr_out(y, yh, "clean") == pytest.approx(10 * np.log10(100 / 1e-6), rel=1e-9)

    def test_zero_numerator(self):
        assert snr_out(np.ones(10), np.zeros(10)) == -np.inf

    def test_exact_reconstruction(self):
        with pytest.raises(InfiniteSNR):
            snr_out(np.ones(10), np.ones(10))

    @pytest.mark.parametrize("c", [1e-3, 0.5, 7.0, 1e4])
    def test_scale_invariant(self, c, rng):
        y, yh = rng.standard_normal(50), rng.standard_normal(50)
        for conv in ("denoised", "clean"):
            assert snr_out(c * y, c * yh, conv) == pytest.approx(snr_out(y, yh, conv), rel=1e-12)

    def test_unknown_convention(self):
        with pytest.raises(InvalidInput):
            snr_out(np.ones(4), np.zeros(4), "other")


class TestPeak:
    def test_gaussian_fwhm(self):
        y = single_peak(2000)
        p = detect_peak(y)
        assert p.height == pytest.approx(2.0, rel=1e-4)
        assert p.fwhm == pytest.approx(2 * np.sqrt(2 * np.log(2)) * 15, abs=y.delta)

    def test_triangle(self):
        p = detect_peak(np.array([0.0, 0.0, 1.0, 2.0, 1.0, 0.0, 0.0]))
        assert (p.height, p.index, p.fwhm) == (2.0, 3, 2.0)

    def test_delta_scales_width(self):
        p = detect_peak(np.array([0.0, 0.0, 1.0, 2.0, 1.0, 0.0, 0.0]), delta=0.25)
        assert p.fwhm == 0.5

    def test_first_argmax_wins(self):
        y = np.array([0, 1, 0, 0, 1, 0], float)
        assert detect_peak(y).index == 1

    @pytest.mark.parametrize("y", [np.arange(10.0), np.arange(10.0)[::-1], np.array([0, 2, 1.5, 1.8, 1.2])])
    def test_no_peak(self, y):
        with pytest.raises(PeakNotFound):
            detect_peak(y)

    def test_error_examples(self):
        clean = PeakInfo(2.0, 10, 10.0)
        assert peak_height_error(PeakInfo(1.9, 10, 10.0), clean) == pytest.approx(5.0)
        assert peak_width_error(PeakInfo(2.0, 10, 12.0), clean) == pytest.approx(20.0)
        assert peak_width_error(PeakInfo(2.0, 10, 8.0), clean) == pytest.approx(20.0)

    def test_zero_reference(self):
        with pytest.raises(InvalidInput):
            peak_height_error(PeakInfo(1.0, 0, 1.0), PeakInfo(0.0, 0, 1.0))

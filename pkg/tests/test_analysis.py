import math

import numpy as np
import pytest

from rotodop import (AtomEnsemble, LineshapeResult, Method, compute_lineshape,
                     derivative_signal, fwhm_analytic, fwhm_numeric,
                     lorentzian, measure_widths, misalignment_broadening,
                     peak_to_peak_analytic, peak_to_peak_width, sweep_widths)
from rotodop.analysis import axial_doppler_fwhm
from rotodop.core import RB87_D1_WAVELENGTH
from rotodop.errors import (GridTooCoarse, HalfMaxNotBracketed,
                            NotSinglePeaked)

from conftest import make_model

GAMMA = 2 * math.pi * 52e3


def lorentzian_shape(gamma=GAMMA, span=4.0, n=40001):
    grid = np.linspace(-span * gamma, span * gamma, n)
    vals = lorentzian(gamma, grid)
    return LineshapeResult(deltas=grid, values=vals / vals.max(),
                           method=Method.ClosedConvolution, error_estimate=0.0)


class TestDerivativeSignal:
    def test_antisymmetric_for_even_input(self):
        d = derivative_signal(lorentzian_shape(n=2001)).values
        assert np.max(np.abs(d + d[::-1])) < 1e-8 * np.max(np.abs(d))

    def test_lorentzian_extrema_positions(self):
        deriv = derivative_signal(lorentzian_shape())
        x = deriv.deltas
        expected = GAMMA / (2 * math.sqrt(3))
        assert x[np.argmax(deriv.values)] == pytest.approx(-expected, rel=1e-3)
        assert x[np.argmin(deriv.values)] == pytest.approx(expected, rel=1e-3)

    def test_zero_crossing_at_peak(self):
        deriv = derivative_signal(lorentzian_shape(n=2001))
        x, d = deriv.deltas, deriv.values
        sign_change = np.nonzero(np.diff(np.sign(d)) != 0)[0]
        crossing = x[sign_change[len(sign_change) // 2]]
        assert abs(crossing) <= x[1] - x[0]

    def test_grid_too_coarse(self):
        shape = LineshapeResult(deltas=np.linspace(-1, 1, 4),
                                values=np.ones(4),
                                method=Method.NarrowLimit, error_estimate=0.0)
        with pytest.raises(GridTooCoarse):
            derivative_signal(shape)

    def test_nonuniform_grid_rejected(self):
        x = np.array([0.0, 1.0, 2.0, 4.0, 8.0])
        shape = LineshapeResult(deltas=x, values=np.exp(-x),
                                method=Method.NarrowLimit, error_estimate=0.0)
        with pytest.raises(GridTooCoarse):
            derivative_signal(shape)


class TestPeakToPeakWidth:
    def test_lorentzian_value(self):
        pp = peak_to_peak_width(lorentzian_shape())
        assert pp == pytest.approx(GAMMA / math.sqrt(3), rel=1e-6)

    def test_narrow_limit_value(self, model_opposite):
        # closed-form calculus on the power-law profile gives
        # pp = 4|l1-l2| / (sqrt(alpha) w sqrt(2q+1)) ~ 1.0306e6 rad/s here
        fw = fwhm_analytic(model_opposite)
        grid = np.linspace(-3 * fw, 3 * fw, 40001)
        shape = compute_lineshape(model_opposite, grid, Method.NarrowLimit)
        pp = peak_to_peak_width(shape)
        assert pp == pytest.approx(1.030566e6, rel=1e-5)
        assert pp == pytest.approx(peak_to_peak_analytic(model_opposite),
                                   rel=1e-6)

    def test_scale_invariance(self):
        shape = lorentzian_shape(n=4001)
        scaled = LineshapeResult(deltas=shape.deltas,
                                 values=137.5 * shape.values,
                                 method=shape.method, error_estimate=0.0)
        assert peak_to_peak_width(scaled) == pytest.approx(
            peak_to_peak_width(shape), rel=1e-9)

    def test_not_single_peaked(self):
        x = np.linspace(-5, 5, 101)
        y = np.exp(-((x - 2) ** 2)) + np.exp(-((x + 2) ** 2))
        shape = LineshapeResult(deltas=x, values=y, method=Method.NarrowLimit,
                                error_estimate=0.0)
        with pytest.raises(NotSinglePeaked):
            peak_to_peak_width(shape)


class TestFwhmNumeric:
    def test_lorentzian(self):
        assert fwhm_numeric(lorentzian_shape()) == pytest.approx(GAMMA,
                                                                 rel=1e-6)

    def test_narrow_limit_matches_analytic(self, model_opposite):
        fw = fwhm_analytic(model_opposite)
        grid = np.linspace(-3 * fw, 3 * fw, 40001)
        shape = compute_lineshape(model_opposite, grid, Method.NarrowLimit)
        assert fwhm_numeric(shape) == pytest.approx(fw, rel=1e-6)

    def test_scale_invariance(self):
        shape = lorentzian_shape(n=4001)
        scaled = LineshapeResult(deltas=shape.deltas, values=0.2 * shape.values,
                                 method=shape.method, error_estimate=0.0)
        assert fwhm_numeric(scaled) == fwhm_numeric(shape)

    def test_half_max_not_bracketed(self):
        grid = np.linspace(-0.2 * GAMMA, 0.2 * GAMMA, 101)
        vals = lorentzian(GAMMA, grid)
        shape = LineshapeResult(deltas=grid, values=vals / vals.max(),
                                method=Method.ClosedConvolution,
                                error_estimate=0.0)
        with pytest.raises(HalfMaxNotBracketed):
            fwhm_numeric(shape)

    def test_grid_refinement_converges(self):
        # widths from successive grid halvings form a Cauchy sequence
        prev = None
        for n in (2501, 5001, 10001):
            fw = fwhm_numeric(lorentzian_shape(n=n))
            if prev is not None:
                assert abs(fw - prev) / GAMMA < 1e-4
            prev = fw

    def test_lorentzian_pp_fwhm_identity(self):
        shape = lorentzian_shape()
        assert peak_to_peak_width(shape) * math.sqrt(3) == \
            pytest.approx(fwhm_numeric(shape), rel=1e-6)

    def test_measure_widths_report(self):
        report = measure_widths(lorentzian_shape(n=10001))
        assert report.fwhm == pytest.approx(GAMMA, rel=1e-5)
        assert report.peak_to_peak == pytest.approx(GAMMA / math.sqrt(3),
                                                    rel=1e-5)
        assert report.method is Method.ClosedConvolution


@pytest.fixture(scope="module")
def sweep():
    base = make_model(1, 1)
    w_per_l = [0.5e-3, 0.65e-3, 0.74e-3, 0.83e-3, 0.89e-3]
    return sweep_widths(base, 4, w_per_l)


class TestSweepWidths:
    def test_equal_branch_flat_at_lorentzian_width(self, sweep):
        expect = GAMMA / math.sqrt(3)
        for width in sweep.width_equal:
            assert width == pytest.approx(expect, rel=1e-4)

    def test_opposite_branch_monotone(self, sweep):
        wo = sweep.width_opposite
        assert all(wo[l + 1] > wo[l] for l in range(1, 4))

    def test_l0_opposite_equals_equal(self, sweep):
        assert sweep.width_opposite[0] == sweep.width_equal[0]

    def test_narrow_limit_width_identities(self):
        # extracted widths match the closed-form FWHM and extrema formulas
        for l in (1, 2, 3, 4):
            model = make_model(l, -l)
            fw = fwhm_analytic(model)
            grid = np.linspace(-3 * fw, 3 * fw, 60001)
            shape = compute_lineshape(model, grid, Method.NarrowLimit)
            assert fwhm_numeric(shape) == pytest.approx(fw, rel=1e-6)
            assert peak_to_peak_width(shape) == pytest.approx(
                peak_to_peak_analytic(model), rel=1e-6)


class TestMisalignmentBroadening:
    def test_doppler_width_reference(self, rb87):
        # ~496 MHz for Rb-87 D1 at 293.15 K, vs the ~500 MHz rule of thumb
        dopp = axial_doppler_fwhm(rb87, RB87_D1_WAVELENGTH)
        assert dopp / (2 * math.pi) == pytest.approx(496.06e6, rel=1e-4)

    def test_one_milliradian(self, rb87):
        val = misalignment_broadening(1e-3, rb87, RB87_D1_WAVELENGTH)
        assert val / (2 * math.pi) == pytest.approx(496.06e3, rel=1e-4)

    def test_zero_angle(self, rb87):
        assert misalignment_broadening(0.0, rb87, RB87_D1_WAVELENGTH) == 0.0

    def test_negative_angle_rejected(self, rb87):
        with pytest.raises(ValueError):
            misalignment_broadening(-1e-3, rb87, RB87_D1_WAVELENGTH)

"""Width extraction and the width-vs-charge sweep.

The measurement protocol modeled here: the magnetic field is scanned with a
small, slow AC modulation and the lock-in output is the derivative of the
signal; the linewidth is the peak-to-peak distance between the derivative
extrema. The numeric FWHM is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .core import AtomEnsemble, BeamMode, CODATA
from .errors import (GridTooCoarse, HalfMaxNotBracketed, NotSinglePeaked)
from .lineshape import (LineshapeResult, Method, ResonanceModel,
                        compute_lineshape, fwhm_analytic)


@dataclass(frozen=True)
class WidthReport:
    fwhm: float                 # rad/s
    peak_to_peak: float         # rad/s
    method: Method
    grid_resolution: float      # rad/s

    def __post_init__(self):
        if not (self.fwhm > 0 and self.peak_to_peak > 0):
            raise ValueError("widths must be positive")


@dataclass(frozen=True)
class SweepResult:
    l_values: list[int]
    width_equal: list[float]        # rad/s, peak-to-peak, l1 = l2
    width_opposite: list[float]     # rad/s, peak-to-peak, l1 = -l2
    fwhm_opposite: list[float]      # rad/s
    w_of_z: list[float]             # m

    def __post_init__(self):
        n = len(self.l_values)
        for name in ("width_equal", "width_opposite", "fwhm_opposite", "w_of_z"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must align with l_values")


def _check_uniform(shape: LineshapeResult) -> float:
    x = shape.deltas
    if x.size < 5:
        raise GridTooCoarse("need at least 5 grid points")
    h = np.diff(x)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise GridTooCoarse("grid must be uniform")
    return float(h[0])


def derivative_signal(shape: LineshapeResult) -> LineshapeResult:
    """dS/d(delta) by finite differences: 4th-order interior stencil,
    2nd-order near the edges, one-sided at the endpoints."""
    h = _check_uniform(shape)
    y = shape.values
    d = np.empty_like(y)
    d[2:-2] = (-y[4:] + 8.0 * y[3:-1] - 8.0 * y[1:-3] + y[:-4]) / (12.0 * h)
    d[1] = (y[2] - y[0]) / (2.0 * h)
    d[-2] = (y[-1] - y[-3]) / (2.0 * h)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * h)
    return LineshapeResult(deltas=shape.deltas, values=d, method=shape.method,
                           error_estimate=shape.error_estimate,
                           raw_peak=shape.raw_peak)


def _assert_single_peaked(shape: LineshapeResult, rtol: float = 1e-9):
    y = shape.values
    i = int(np.argmax(y))
    tol = rtol * y[i]
    if np.any(np.diff(y[: i + 1]) < -tol) or np.any(np.diff(y[i:]) > tol):
        raise NotSinglePeaked("profile is not single-peaked on the grid")
    return i


def _parabolic_vertex(x, y, j) -> float:
    """Vertex abscissa of the parabola through points j-1, j, j+1."""
    denom = y[j - 1] - 2.0 * y[j] + y[j + 1]
    if denom == 0.0:
        return float(x[j])
    h = x[j + 1] - x[j]
    return float(x[j] + 0.5 * h * (y[j - 1] - y[j + 1]) / denom)


def peak_to_peak_width(shape: LineshapeResult) -> float:
    """Separation of the two extrema of dS/d(delta), parabolically refined (rad/s)."""
    _assert_single_peaked(shape)
    deriv = derivative_signal(shape)
    d = deriv.values
    x = deriv.deltas
    j_max = int(np.argmax(d))
    j_min = int(np.argmin(d))
    if not (0 < j_max < x.size - 1 and 0 < j_min < x.size - 1):
        raise NotSinglePeaked("derivative extrema touch the grid edges")
    x_max = _parabolic_vertex(x, d, j_max)
    x_min = _parabolic_vertex(x, d, j_min)
    return abs(x_min - x_max)


def _cross_half(x, y, half, j) -> float:
    """Linear interpolation of the half-max crossing inside [j, j+1]."""
    y0, y1 = y[j], y[j + 1]
    if y1 == y0:
        return float(x[j])
    t = (half - y0) / (y1 - y0)
    return float(x[j] + t * (x[j + 1] - x[j]))


def fwhm_numeric(shape: LineshapeResult) -> float:
    """Full width at half maximum from the sampled profile (rad/s).

    Bisection over indices locates the bracketing interval on each monotone
    flank; the crossing is linearly interpolated. Accuracy is limited by the
    grid step; use fine grids for tight comparisons.
    """
    i_peak = _assert_single_peaked(shape)
    x, y = shape.deltas, shape.values
    half = 0.5 * y[i_peak]
    if i_peak in (0, y.size - 1):
        raise HalfMaxNotBracketed("peak must be interior to the grid")
    if y[0] >= half or y[-1] >= half:
        raise HalfMaxNotBracketed("grid does not reach half maximum")

    # left flank: y rises through half somewhere in [0, i_peak]
    lo, hi = 0, i_peak
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if y[mid] < half:
            lo = mid
        else:
            hi = mid
    left = _cross_half(x, y, half, lo)

    lo, hi = i_peak, y.size - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if y[mid] >= half:
            lo = mid
        else:
            hi = mid
    right = _cross_half(x, y, half, lo)
    return right - left


def measure_widths(shape: LineshapeResult) -> WidthReport:
    return WidthReport(fwhm=fwhm_numeric(shape),
                       peak_to_peak=peak_to_peak_width(shape),
                       method=shape.method,
                       grid_resolution=shape.grid_step())


def _with_charges(base: ResonanceModel, l1: int, l2: int,
                  waist: float) -> ResonanceModel:
    def remake(beam: BeamMode, l: int) -> BeamMode:
        return BeamMode(charge_l=l, waist_w0=waist, wavelength=beam.wavelength,
                        z=beam.z, intensity_scale_I0=beam.intensity_scale_I0)
    return ResonanceModel(ensemble=base.ensemble,
                          beam1=remake(base.beam1, l1),
                          beam2=remake(base.beam2, l2),
                          amplitude_A=base.amplitude_A)


def sweep_widths(base: ResonanceModel, l_max: int,
                 w_per_l: list[float], n_points: int = 2001) -> SweepResult:
    """Peak-to-peak widths vs topological charge for equal and opposite pairs.

    w_per_l[l] is the measured beam radius used for charge l (the beams are
    rebuilt at z=0 with that radius). The equal-charge branch is the
    homogeneous Lorentzian; the opposite-charge branch uses the convolution
    lineshape.
    """
    if len(w_per_l) != l_max + 1:
        raise ValueError("w_per_l must have l_max + 1 entries")
    gamma = base.ensemble.gamma
    l_values = list(range(l_max + 1))
    width_equal, width_opposite, fwhm_opposite = [], [], []

    for l in l_values:
        equal = _with_charges(base, l, l, w_per_l[l])
        grid = np.linspace(-4.0 * gamma, 4.0 * gamma, 4 * n_points + 1)
        shape = compute_lineshape(equal, grid, Method.ClosedConvolution)
        pp_equal = peak_to_peak_width(shape)
        width_equal.append(pp_equal)

        if l == 0:
            width_opposite.append(pp_equal)
            fwhm_opposite.append(fwhm_numeric(shape))
            continue
        opposite = _with_charges(base, l, -l, w_per_l[l])
        span = 2.5 * (fwhm_analytic(opposite) + gamma)
        grid = np.linspace(-span, span, n_points)
        shape = compute_lineshape(opposite, grid, Method.ClosedConvolution)
        width_opposite.append(peak_to_peak_width(shape))
        fwhm_opposite.append(fwhm_numeric(shape))

    return SweepResult(l_values=l_values, width_equal=width_equal,
                       width_opposite=width_opposite,
                       fwhm_opposite=fwhm_opposite,
                       w_of_z=list(w_per_l))


def axial_doppler_fwhm(ens: AtomEnsemble, wavelength: float) -> float:
    """FWHM of the axial (plane-wave) Doppler profile, in rad/s."""
    speed = math.sqrt(2.0 * CODATA.boltzmann_kB * ens.temperature_T / ens.mass_m)
    return 2.0 * math.pi * (2.0 * math.sqrt(math.log(2.0)) / wavelength) * speed


def misalignment_broadening(epsilon: float, ens: AtomEnsemble,
                            wavelength: float) -> float:
    """Order-of-magnitude broadening for a small angle between the beam axes.

    Returns epsilon * Delta_Dopp (rad/s). This is an upper-bound heuristic,
    not a lineshape model; measured sensitivities are a few times smaller.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    return epsilon * axial_doppler_fwhm(ens, wavelength)

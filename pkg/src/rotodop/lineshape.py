"""Deterministic Hanle/EIT lineshape computation.

Three routes to the ensemble signal S(delta):

* :func:`signal_double_integral` -- nested adaptive quadrature over the
  atom's radial position and azimuthal velocity (the reference oracle),
* :func:`signal_closed_form` -- the single convolution of the homogeneous
  Lorentzian with the rotational-Doppler profile, exponent
  q = |l1|+|l2|+3/2,
* :func:`signal_narrow_limit` -- the gamma -> 0 closed form.

All three return values on an arbitrary common scale; grid-level results
from :func:`compute_lineshape` are normalized to unit peak, with the raw
peak kept in the result. Widths are scale-free so nothing is lost.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import math
import warnings

import numpy as np
from scipy.integrate import quad, IntegrationWarning

from .core import AtomEnsemble, BeamMode, beam_radius, lg_intensity, maxwell_weight
from .doppler import rotational_shift_coefficient
from .errors import DegenerateCharges, QuadratureFailure


class Method(Enum):
    DoubleIntegral = "double-integral"
    ClosedConvolution = "closed-form"
    NarrowLimit = "narrow-limit"
    MonteCarlo = "monte-carlo"


@dataclass(frozen=True)
class ResonanceModel:
    """Two copropagating LG beams driving the Hanle/EIT resonance in a vapor."""

    ensemble: AtomEnsemble
    beam1: BeamMode
    beam2: BeamMode
    amplitude_A: float = 1.0

    def __post_init__(self):
        if self.beam1.wavelength != self.beam2.wavelength:
            raise ValueError("beams must share a wavelength")
        if self.beam1.z != self.beam2.z or self.beam1.waist_w0 != self.beam2.waist_w0:
            raise ValueError("beams must share waist and propagation distance")
        if not self.amplitude_A > 0:
            raise ValueError("amplitude_A must be positive")

    @property
    def l1(self) -> int:
        return self.beam1.charge_l

    @property
    def l2(self) -> int:
        return self.beam2.charge_l

    def charge_exponent_q(self) -> float:
        """q = |l1| + |l2| + 3/2."""
        return abs(self.l1) + abs(self.l2) + 1.5

    def w_z(self) -> float:
        return beam_radius(self.beam1)


@dataclass(frozen=True)
class LineshapeResult:
    """Sampled signal on a detuning grid plus provenance metadata."""

    deltas: np.ndarray          # rad/s, strictly increasing
    values: np.ndarray          # unit-peak normalized for signals
    method: Method
    error_estimate: float       # max relative numerical error over the grid
    raw_peak: float = float("nan")  # pre-normalization peak value

    def __post_init__(self):
        deltas = np.asarray(self.deltas, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "values", values)
        if deltas.shape != values.shape or deltas.ndim != 1:
            raise ValueError("deltas and values must be 1D arrays of equal length")
        if deltas.size >= 2 and not np.all(np.diff(deltas) > 0):
            raise ValueError("deltas must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")

    def grid_step(self) -> float:
        return float(self.deltas[1] - self.deltas[0])


def lorentzian(gamma: float, x):
    """Unit-area Lorentzian gamma / (2 pi [x^2 + (gamma/2)^2]); FWHM gamma."""
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    x = np.asarray(x, dtype=float)
    out = gamma / (2.0 * math.pi * (x**2 + (gamma / 2.0) ** 2))
    return out if out.ndim else float(out)


def homogeneous_response(model: ResonanceModel, r: float,
                         delta_prime: float, delta: float) -> float:
    """Local two-photon response A I1(r) I2(r) L(delta' - delta)."""
    return model.amplitude_A * lg_intensity(model.beam1, r) \
        * lg_intensity(model.beam2, r) \
        * lorentzian(model.ensemble.gamma, delta_prime - delta)


def _quad(func, a, b, *, epsrel=1e-10, epsabs=0.0, points=None, limit=200):
    """scipy quad with failure surfaced as QuadratureFailure."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(func, a, b, epsrel=epsrel, epsabs=epsabs,
                                 points=points, limit=limit)
        except IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from exc
    if abserr > 1e-6 * max(abs(value), epsabs) and abserr > epsabs:
        raise QuadratureFailure(
            f"quadrature error {abserr:g} too large for value {value:g}")
    return value


def _radial_overlap(model: ResonanceModel) -> float:
    """integral of 2 pi r I1(r) I2(r) dr over [0, 6 w(z)]."""
    w = model.w_z()

    def f(r):
        return 2.0 * math.pi * r * lg_intensity(model.beam1, r) \
            * lg_intensity(model.beam2, r)

    return _quad(f, 0.0, 6.0 * w)


def signal_double_integral(model: ResonanceModel, delta: float) -> float:
    """Ensemble signal by nested quadrature over (r, V_phi).

    Requires |l1| = |l2| (the geometry for which axial and radial Doppler
    contributions cancel); this is the slow reference oracle.
    """
    if abs(model.l1) != abs(model.l2):
        raise ValueError("double integral requires |l1| == |l2|")
    ens = model.ensemble
    gamma = ens.gamma

    if model.l1 == model.l2:
        # delta' = 0 for every atom: the integral factorizes exactly.
        return ens.density_scale_N * model.amplitude_A * _radial_overlap(model) \
            * lorentzian(gamma, -delta)

    coeff = rotational_shift_coefficient(model.beam1, model.beam2)
    a = ens.alpha()
    vmax = 12.0 / math.sqrt(2.0 * a)    # 12 sigma of the V_phi Gaussian
    w = model.w_z()
    norm = math.sqrt(a / math.pi)
    half_g = gamma / 2.0
    pref = gamma / (2.0 * math.pi)
    ltot = abs(model.l1) + abs(model.l2)
    i0 = model.beam1.intensity_scale_I0 * model.beam2.intensity_scale_I0

    def inner(r):
        c = coeff / r

        # scalar math here: this integrand runs millions of times
        def f(v):
            x = c * v - delta
            return norm * math.exp(-a * v * v) * pref / (x * x + half_g * half_g)

        # breakpoints around the (narrow) Lorentzian resonance in v
        v_res = delta / c
        v_half = abs(gamma / c)
        points = sorted(p for p in (v_res - 50 * v_half, v_res, v_res + 50 * v_half)
                        if -vmax < p < vmax) or None
        return _quad(f, -vmax, vmax, points=points)

    def outer(r):
        if r == 0.0:
            return 0.0
        return 2.0 * math.pi * i0 * r ** (2 * ltot + 1) \
            * math.exp(-4.0 * r * r / (w * w)) * inner(r)

    value = _quad(outer, 0.0, 6.0 * w, epsrel=1e-9)
    return ens.density_scale_N * model.amplitude_A * value


def _profile_scale(model: ResonanceModel) -> float:
    """delta' scale of the rotational-Doppler profile: 2|l1-l2|/(sqrt(alpha) w)."""
    dl = abs(model.l1 - model.l2)
    return 2.0 * dl / (math.sqrt(model.ensemble.alpha()) * model.w_z())


def signal_closed_form(model: ResonanceModel, delta: float) -> float:
    """Single convolution of the Lorentzian with the power-law Doppler profile.

    S(delta) = C * integral L(d' - delta) [alpha d'^2/(l1-l2)^2 + 4/w^2]^(-q) dd'
    with q = |l1|+|l2|+3/2. The constant C is left at 1; callers normalize.
    """
    if model.l1 == model.l2:
        raise DegenerateCharges("closed form requires l1 != l2")
    gamma = model.ensemble.gamma
    a = model.ensemble.alpha()
    dl2 = float(model.l1 - model.l2) ** 2
    w = model.w_z()
    q = model.charge_exponent_q()

    def kernel(dp):
        return lorentzian(gamma, dp - delta) * (a * dp * dp / dl2 + 4.0 / w**2) ** (-q)

    # The window must cover both the power-law profile (centered at d'=0)
    # and the Lorentzian peak (at d'=delta); tails beyond decay as d'^(-2q-2).
    half = max(50.0 * gamma, 40.0 * _profile_scale(model))
    lo = min(0.0, delta) - half
    hi = max(0.0, delta) + half
    points = [0.0, delta]
    return _quad(kernel, lo, hi, points=points)


def signal_narrow_limit(model: ResonanceModel, delta: float) -> float:
    """gamma -> 0 limit: S(delta) = C [alpha delta^2/(l1-l2)^2 + 4/w^2]^(-q)."""
    if model.l1 == model.l2:
        raise DegenerateCharges("narrow limit requires l1 != l2")
    a = model.ensemble.alpha()
    dl2 = float(model.l1 - model.l2) ** 2
    w = model.w_z()
    q = model.charge_exponent_q()
    return (a * delta * delta / dl2 + 4.0 / w**2) ** (-q)


def fwhm_analytic(model: ResonanceModel) -> float:
    """FWHM of the narrow-limit profile: 4|l1-l2|/(sqrt(alpha) w) sqrt(2^(1/q)-1)."""
    if model.l1 == model.l2:
        raise DegenerateCharges("analytic FWHM requires l1 != l2")
    q = model.charge_exponent_q()
    return _profile_scale(model) * 2.0 * math.sqrt(2.0 ** (1.0 / q) - 1.0)


def peak_to_peak_analytic(model: ResonanceModel) -> float:
    """Derivative peak-to-peak width of the narrow-limit profile."""
    if model.l1 == model.l2:
        raise DegenerateCharges("analytic width requires l1 != l2")
    q = model.charge_exponent_q()
    return _profile_scale(model) * 2.0 / math.sqrt(2.0 * q + 1.0)


_SCALAR_OPS = {
    Method.DoubleIntegral: signal_double_integral,
    Method.ClosedConvolution: signal_closed_form,
    Method.NarrowLimit: signal_narrow_limit,
}


def compute_lineshape(model: ResonanceModel, deltas,
                      method: Method = Method.ClosedConvolution) -> LineshapeResult:
    """Evaluate S over a detuning grid and normalize to unit peak.

    For l1 == l2 the closed-form and narrow-limit routes return the exact
    Lorentzian branch (the physical limit exists even though the change of
    variables does not).
    """
    deltas = np.asarray(deltas, dtype=float)
    if method is Method.MonteCarlo:
        raise ValueError("use rotodop.montecarlo.mc_signal for the MC route")

    gamma = model.ensemble.gamma
    if model.l1 == model.l2 and method in (Method.ClosedConvolution,
                                           Method.NarrowLimit):
        values = lorentzian(gamma, deltas)
        err = 0.0
    else:
        op = _SCALAR_OPS[method]
        values = np.array([op(model, d) for d in deltas])
        err = 1e-8  # quadrature relative tolerance, enforced by _quad

    peak = float(values.max())
    if not peak > 0:
        raise ValueError("signal vanished on the whole grid")
    return LineshapeResult(deltas=deltas, values=values / peak, method=method,
                           error_estimate=err, raw_peak=peak)

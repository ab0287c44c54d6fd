"""Rotational-Doppler broadening of Hanle/EIT resonances in thermal Rb vapor.

Two copropagating Laguerre-Gaussian beams with opposite circular
polarizations drive a two-photon ground-state coherence; when their
topological charges differ, the azimuthal atomic motion Doppler-broadens
the resonance. This package computes the resulting lineshapes by
deterministic quadrature and by Monte Carlo sampling, and extracts the
widths measured in a lock-in derivative protocol.
"""

from .core import (AtomEnsemble, BeamMode, CODATA, CylKinematics,
                   PhysicalConstants, ZeemanConfig, beam_radius, lg_intensity,
                   maxwell_weight, rayleigh_range, zeeman_shift)
from .doppler import DopplerBreakdown, lg_doppler_shift, two_photon_detuning
from .lineshape import (LineshapeResult, Method, ResonanceModel,
                        compute_lineshape, fwhm_analytic, homogeneous_response,
                        lorentzian, peak_to_peak_analytic, signal_closed_form,
                        signal_double_integral, signal_narrow_limit)
from .montecarlo import McConfig, McResult, mc_signal, sample_atom
from .analysis import (SweepResult, WidthReport, axial_doppler_fwhm,
                       derivative_signal, fwhm_numeric, measure_widths,
                       misalignment_broadening, peak_to_peak_width,
                       sweep_widths)
from . import errors, units

__version__ = "0.1.0"

__all__ = [
    "AtomEnsemble", "BeamMode", "CODATA", "CylKinematics", "PhysicalConstants",
    "ZeemanConfig", "beam_radius", "lg_intensity", "maxwell_weight",
    "rayleigh_range", "zeeman_shift",
    "DopplerBreakdown", "lg_doppler_shift", "two_photon_detuning",
    "LineshapeResult", "Method", "ResonanceModel", "compute_lineshape",
    "fwhm_analytic", "homogeneous_response", "lorentzian",
    "peak_to_peak_analytic", "signal_closed_form", "signal_double_integral",
    "signal_narrow_limit",
    "McConfig", "McResult", "mc_signal", "sample_atom",
    "SweepResult", "WidthReport", "axial_doppler_fwhm", "derivative_signal",
    "fwhm_numeric", "measure_widths", "misalignment_broadening",
    "peak_to_peak_width", "sweep_widths",
    "errors", "units",
]

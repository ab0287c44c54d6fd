"""Physical constants, value types and elementary beam/thermal formulas.

Unit convention: every detuning, shift and relaxation rate in this package
is an angular frequency (rad/s). Conversion to ordinary frequency (Hz)
happens only at the reporting layer (see :mod:`rotodop.units`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import constants as _const


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants used throughout; the single source of truth."""

    boltzmann_kB: float = _const.k                                             # J/K
    bohr_magneton_muB: float = _const.physical_constants["Bohr magneton"][0]   # J/T
    reduced_planck_hbar: float = _const.hbar                                   # J*s
    atomic_mass_unit_u: float = _const.u                                       # kg

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive")


CODATA = PhysicalConstants()

# Default species: Rb-87 on the D1 line in a room-temperature cell.
RB87_MASS_U = 86.9092
RB87_D1_WAVELENGTH = 794.98e-9
DEFAULT_TEMPERATURE = 293.15


@dataclass(frozen=True)
class AtomEnsemble:
    """Thermal vapor parameters relevant to the ground-state coherence."""

    mass_m: float                       # kg
    temperature_T: float                # K
    gyro_g: float                       # dimensionless ground-state g factor
    gamma: float                        # rad/s, coherence relaxation rate
    density_scale_N: float = 1.0        # dimensionless signal amplitude

    def __post_init__(self):
        if not self.mass_m > 0:
            raise ValueError("mass_m must be positive")
        if not self.temperature_T > 0:
            raise ValueError("temperature_T must be positive")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")

    def alpha(self) -> float:
        """m / (2 kB T), the inverse squared thermal speed scale (s^2/m^2)."""
        return self.mass_m / (2.0 * CODATA.boltzmann_kB * self.temperature_T)

    @classmethod
    def rb87(cls, temperature_T: float = DEFAULT_TEMPERATURE,
             gyro_g: float = 0.5, gamma: float = 2 * math.pi * 52e3,
             density_scale_N: float = 1.0) -> "AtomEnsemble":
        return cls(mass_m=RB87_MASS_U * CODATA.atomic_mass_unit_u,
                   temperature_T=temperature_T, gyro_g=gyro_g,
                   gamma=gamma, density_scale_N=density_scale_N)


@dataclass(frozen=True)
class BeamMode:
    """One Laguerre-Gaussian field; only p=0 radial modes are supported."""

    charge_l: int
    waist_w0: float                     # m
    wavelength: float                   # m
    z: float = 0.0                      # m, propagation distance from waist
    radial_p: int = 0
    intensity_scale_I0: float = 1.0     # arbitrary units

    def __post_init__(self):
        if self.radial_p != 0:
            raise ValueError("only p=0 modes are supported")
        if not self.waist_w0 > 0:
            raise ValueError("waist_w0 must be positive")
        if not self.wavelength > 0:
            raise ValueError("wavelength must be positive")
        if self.intensity_scale_I0 < 0:
            raise ValueError("intensity_scale_I0 must be nonnegative")

    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength


@dataclass(frozen=True)
class CylKinematics:
    """Atom position and velocity in cylindrical coordinates."""

    r: float                            # m, >= 0
    z: float                            # m
    phi: float                          # rad
    V_R: float                          # m/s
    V_z: float                          # m/s
    V_phi: float                        # m/s

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        for v in (self.V_R, self.V_z, self.V_phi):
            if not math.isfinite(v):
                raise ValueError("velocity components must be finite")


@dataclass(frozen=True)
class ZeemanConfig:
    """Axial static magnetic field; sign is meaningful (scans cross zero)."""

    B: float                            # T

    def __post_init__(self):
        if not math.isfinite(self.B):
            raise ValueError("B must be finite")


def rayleigh_range(beam: BeamMode) -> float:
    """pi w0^2 / lambda (m)."""
    return math.pi * beam.waist_w0**2 / beam.wavelength


def beam_radius(beam: BeamMode) -> float:
    """Beam radius w(z) on the standard Gaussian-beam hyperbola (m)."""
    zr = rayleigh_range(beam)
    return beam.waist_w0 * math.sqrt(1.0 + (beam.z / zr) ** 2)


def lg_intensity(beam: BeamMode, r):
    """Far-field LG intensity I0 * r^(2|l|) * exp(-2 r^2 / w(z)^2).

    Accepts scalar or array r (m); r >= 0.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be nonnegative")
    w = beam_radius(beam)
    out = beam.intensity_scale_I0 * r ** (2 * abs(beam.charge_l)) \
        * np.exp(-2.0 * r**2 / w**2)
    return out if out.ndim else float(out)


def maxwell_weight(ens: AtomEnsemble, V_phi):
    """Normalized 1D Maxwell-Boltzmann density in the azimuthal velocity (s/m).

    density_scale_N is deliberately not applied here; it scales the signal.
    """
    a = ens.alpha()
    V_phi = np.asarray(V_phi, dtype=float)
    out = math.sqrt(a / math.pi) * np.exp(-a * V_phi**2)
    return out if out.ndim else float(out)


def zeeman_shift(ens: AtomEnsemble, zcfg: ZeemanConfig) -> float:
    """Raman splitting 2 g muB B / hbar of the Delta m = +-2 ground coherence (rad/s)."""
    return 2.0 * ens.gyro_g * CODATA.bohr_magneton_muB * zcfg.B \
        / CODATA.reduced_planck_hbar

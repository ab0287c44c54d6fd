"""Conversions between internal angular frequencies and reported units."""

from __future__ import annotations

import math

from .core import AtomEnsemble, CODATA


def rad_to_hz(omega: float) -> float:
    return omega / (2.0 * math.pi)


def hz_to_rad(nu: float) -> float:
    return 2.0 * math.pi * nu


def delta_to_b(delta: float, ens: AtomEnsemble) -> float:
    """Magnetic field (T) producing Zeeman splitting delta (rad/s)."""
    return delta * CODATA.reduced_planck_hbar / (2.0 * ens.gyro_g
                                                 * CODATA.bohr_magneton_muB)


def b_to_delta(b_field: float, ens: AtomEnsemble) -> float:
    """Zeeman splitting (rad/s) for an axial field (T)."""
    return 2.0 * ens.gyro_g * CODATA.bohr_magneton_muB * b_field \
        / CODATA.reduced_planck_hbar

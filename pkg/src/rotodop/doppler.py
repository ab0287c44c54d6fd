"""Doppler shift of a Laguerre-Gaussian mode seen by a moving atom.

The shift splits into four contributions:

* axial: plane-wave term -k V_z together with the wavefront-curvature
  correction multiplying V_z,
* gouy: the +(2p+|l|+1) z_R/(z^2+z_R^2) V_z piece (depends on |l| only),
* radial: -(k r z/(z^2+z_R^2)) V_R from wavefront curvature,
* rotational: -(l/r) V_phi from the helical phase.

The sum of the four is the total shift; the decomposition is exact by
construction. Sign convention: the rotational term carries the overall
leading minus sign, so the two-photon difference below comes out as
((l2-l1)/r) V_phi. Lineshapes are insensitive to this overall sign
because the thermal velocity distribution is even.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

from .core import BeamMode, CylKinematics, rayleigh_range
from .errors import DegenerateRadius


@dataclass(frozen=True)
class DopplerBreakdown:
    axial: float        # rad/s, includes the curvature correction to -k V_z
    radial: float       # rad/s
    gouy: float         # rad/s
    rotational: float   # rad/s

    @property
    def total(self) -> float:
        return self.axial + self.radial + self.gouy + self.rotational


def lg_doppler_shift(beam: BeamMode, kin: CylKinematics) -> DopplerBreakdown:
    """Term-by-term Doppler shift of one LG mode at the atom's (r, z) and velocity."""
    k = beam.wavenumber()
    zr = rayleigh_range(beam)
    z = beam.z
    d = z * z + zr * zr
    r = kin.r

    curvature = k * r * r / (2.0 * d) * (2.0 * z * z / d - 1.0)
    axial = -(k + curvature) * kin.V_z
    gouy = (2 * beam.radial_p + abs(beam.charge_l) + 1) * zr / d * kin.V_z
    radial = -(k * r * z / d) * kin.V_R

    if beam.charge_l == 0:
        rotational = 0.0
    elif r == 0.0:
        raise DegenerateRadius("rotational shift undefined at r=0 for l != 0")
    else:
        rotational = -(beam.charge_l / r) * kin.V_phi

    return DopplerBreakdown(axial=axial, radial=radial, gouy=gouy,
                            rotational=rotational)


def two_photon_detuning(beam1: BeamMode, beam2: BeamMode,
                        kin: CylKinematics) -> float:
    """Differential shift delta' between two copropagating LG modes (rad/s).

    For beams sharing wavelength, waist and z, with p=0 and |l1|=|l2|,
    the axial, curvature, Gouy and radial terms cancel exactly and
    delta' = ((l2-l1)/r) V_phi.
    """
    if beam1.wavelength != beam2.wavelength:
        raise ValueError("beams must share a wavelength")
    s1 = lg_doppler_shift(beam1, kin)
    s2 = lg_doppler_shift(beam2, kin)
    # Subtract term by term: contributions that are identical for both beams
    # (axial, radial, and the Gouy term when |l1|=|l2|) then cancel exactly
    # in floating point, not just to rounding level.
    return ((s1.axial - s2.axial) + (s1.radial - s2.radial)
            + (s1.gouy - s2.gouy) + (s1.rotational - s2.rotational))


def rotational_shift_coefficient(beam1: BeamMode, beam2: BeamMode) -> float:
    """(l2 - l1): delta' = coefficient * V_phi / r under the cancellation premise."""
    return float(beam2.charge_l - beam1.charge_l)

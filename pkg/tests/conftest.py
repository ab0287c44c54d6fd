import math

import pytest

from rotodop import AtomEnsemble, BeamMode, ResonanceModel
from rotodop.core import RB87_D1_WAVELENGTH


@pytest.fixture
def rb87():
    return AtomEnsemble.rb87()


def make_model(l1, l2, w=0.65e-3, gamma=2 * math.pi * 52e3, z=0.0,
               temperature=293.15):
    ens = AtomEnsemble.rb87(temperature_T=temperature, gamma=gamma)
    return ResonanceModel(
        ensemble=ens,
        beam1=BeamMode(charge_l=l1, waist_w0=w, wavelength=RB87_D1_WAVELENGTH, z=z),
        beam2=BeamMode(charge_l=l2, waist_w0=w, wavelength=RB87_D1_WAVELENGTH, z=z))


@pytest.fixture
def model_opposite():
    return make_model(1, -1)


@pytest.fixture
def model_equal():
    return make_model(1, 1)

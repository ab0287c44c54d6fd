import csv
import json
import math

import numpy as np
import pytest

from rotodop.cli import (EXIT_CONFIG, EXIT_INSUFFICIENT_SAMPLES, EXIT_OK,
                         load_config, main)
from rotodop.core import AtomEnsemble
from rotodop.errors import ConfigError
from rotodop.units import b_to_delta, delta_to_b, hz_to_rad, rad_to_hz

BASE_CONFIG = """
[species]
mass_u = 86.9092
g_factor = 0.5
wavelength_nm = 794.98

[ensemble]
temperature_k = 293.15
gamma_khz = 52.0

[beams]
pairs = [[1, 1], [1, -1]]
w_mm = 0.65

[scan]
delta_min_khz = -600.0
delta_max_khz = 600.0
n_points = 101
method = "closed-form"

[mc]
n_samples = 200000
seed = 7
max_rel_error = 0.05
"""


def write_config(tmp_path, text=BASE_CONFIG):
    path = tmp_path / "run.toml"
    path.write_text(text)
    return path


def read_csv(path):
    with open(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [list(map(float, row)) for row in reader]
    return header, np.array(rows)


class TestUnitConversions:
    def test_hz_roundtrip(self):
        for omega in (1.0, 3.27e5, 2.9e9):
            assert hz_to_rad(rad_to_hz(omega)) == pytest.approx(omega,
                                                                rel=1e-12)

    def test_field_roundtrip(self):
        ens = AtomEnsemble.rb87()
        for b_val in (1e-9, 2.5e-6, 1e-4):
            assert delta_to_b(b_to_delta(b_val, ens), ens) == \
                pytest.approx(b_val, rel=1e-12)


class TestConfig:
    def test_defaults_valid(self):
        cfg = load_config(None)
        assert cfg.gamma_rad_s == pytest.approx(2 * math.pi * 52e3)
        assert cfg.sweep_w_per_l_m == pytest.approx(
            [0.5e-3, 0.65e-3, 0.74e-3, 0.83e-3, 0.89e-3])

    def test_unknown_key_rejected(self, tmp_path):
        path = write_config(tmp_path, "[ensemble]\ngamma_hz = 52.0\n")
        with pytest.raises(ConfigError, match="gamma_hz"):
            load_config(path)

    def test_mismatched_pair_rejected(self, tmp_path):
        path = write_config(tmp_path, "[beams]\npairs = [[2, -1]]\n")
        with pytest.raises(ConfigError, match="l1"):
            load_config(path)

    def test_field_scan_units(self, tmp_path):
        path = write_config(tmp_path,
                            "[scan]\nb_min_ut = -10.0\nb_max_ut = 10.0\n")
        cfg = load_config(path)
        ens = cfg.ensemble()
        assert cfg.delta_max_rad_s == pytest.approx(
            b_to_delta(10e-6, ens), rel=1e-14)

    def test_bad_config_exit_code(self, tmp_path):
        path = write_config(tmp_path, "[scan]\nn_points = 2\n")
        assert main(["scan", "--config", str(path),
                     "--out", str(tmp_path / "out")]) == EXIT_CONFIG


class TestScan:
    def test_outputs_and_columns(self, tmp_path):
        out = tmp_path / "out"
        code = main(["scan", "--config", str(write_config(tmp_path)),
                     "--out", str(out)])
        assert code == EXIT_OK
        header, rows = read_csv(out / "scan_l1_1_l2_1.csv")
        assert header == ["delta_rad_s", "delta_hz", "b_field_tesla",
                          "signal_norm", "derivative"]
        assert rows.shape == (101, 5)
        # signal peaked at delta = 0, derivative antisymmetric
        assert rows[np.argmax(rows[:, 3]), 0] == pytest.approx(0.0, abs=1e-9)
        deriv = rows[:, 4]
        assert np.max(np.abs(deriv + deriv[::-1])) < 1e-6 * np.max(np.abs(deriv))
        # unit columns consistent
        assert np.allclose(rows[:, 1], rows[:, 0] / (2 * math.pi), rtol=1e-14)

    def test_opposite_charge_broader(self, tmp_path):
        out = tmp_path / "out"
        main(["scan", "--config", str(write_config(tmp_path)), "--out",
              str(out)])
        _, same = read_csv(out / "scan_l1_1_l2_1.csv")
        _, opp = read_csv(out / "scan_l1_1_l2_-1.csv")

        def pp(rows):
            x, d = rows[:, 0], rows[:, 4]
            return abs(x[np.argmin(d)] - x[np.argmax(d)])

        assert pp(opp) > 2 * pp(same)

    def test_byte_identical_reruns(self, tmp_path):
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["scan", "--config", str(cfg), "--out", str(out1)])
        main(["scan", "--config", str(cfg), "--out", str(out2)])
        for name in ("scan_l1_1_l2_1.csv", "scan_l1_1_l2_-1.csv",
                     "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_manifest_records_resolved_config(self, tmp_path):
        out = tmp_path / "out"
        main(["scan", "--config", str(write_config(tmp_path)), "--out",
              str(out), "--points", "51"])
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["command"] == "scan"
        assert manifest["config"]["n_points"] == 51
        assert manifest["config"]["gamma_rad_s"] == pytest.approx(
            2 * math.pi * 52e3)
        assert set(manifest["files"]) == {"scan_l1_1_l2_1.csv",
                                          "scan_l1_1_l2_-1.csv"}


class TestSweep:
    def test_default_sweep(self, tmp_path):
        out = tmp_path / "out"
        assert main(["sweep", "--out", str(out)]) == EXIT_OK
        header, rows = read_csv(out / "sweep_widths.csv")
        assert header == ["l", "width_equal_hz", "width_opposite_hz",
                          "fwhm_opposite_hz", "w_of_z_mm"]
        assert np.array_equal(rows[:, 0], [0.0, 1.0, 2.0, 3.0, 4.0])
        # equal branch flat at 52/sqrt(3) ~ 30 kHz
        assert np.allclose(rows[:, 1], 52e3 / math.sqrt(3), rtol=1e-3)
        # opposite branch strictly increasing for l >= 1
        assert np.all(np.diff(rows[1:, 2]) > 0)
        assert np.allclose(rows[:, 4], [0.5, 0.65, 0.74, 0.83, 0.89],
                           rtol=1e-14)


class TestMcCheck:
    def test_passes_with_default_seed(self, tmp_path):
        out = tmp_path / "out"
        code = main(["mc-check", "--config", str(write_config(tmp_path)),
                     "--out", str(out)])
        assert code == EXIT_OK
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["pair"] == [1, -1]
        assert manifest["fraction_within_4se"] >= 0.99

    def test_two_seeds_both_pass_but_differ(self, tmp_path):
        cfg = write_config(tmp_path)
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["mc-check", "--config", str(cfg), "--out", str(out1),
                     "--seed", "1"]) == EXIT_OK
        assert main(["mc-check", "--config", str(cfg), "--out", str(out2),
                     "--seed", "2"]) == EXIT_OK
        assert (out1 / "mc_check.csv").read_bytes() != \
            (out2 / "mc_check.csv").read_bytes()

    def test_insufficient_samples_exit_code(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        code = main(["mc-check", "--config", str(cfg), "--out", str(out),
                     "--seed", "7"])
        assert code == EXIT_OK
        small = BASE_CONFIG.replace("n_samples = 200000", "n_samples = 100")
        code = main(["mc-check", "--config",
                     str(write_config(tmp_path, small)), "--out", str(out)])
        assert code == EXIT_INSUFFICIENT_SAMPLES

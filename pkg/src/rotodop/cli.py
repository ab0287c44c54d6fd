"""Command-line interface: scan, sweep and mc-check subcommands.

Config files are TOML; every physical quantity carries its unit in the key
name (gamma_khz, w0_mm, ...). Outputs are plain CSV plus a JSON manifest
recording the fully resolved parameters, so every file is reproducible from
its manifest alone.

Exit codes: 0 ok, 2 config error, 3 quadrature failure, 4 statistical check
failure, 5 insufficient Monte Carlo samples.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from importlib.metadata import version as _pkg_version
from pathlib import Path

import numpy as np

from .analysis import derivative_signal, sweep_widths
from .core import (AtomEnsemble, BeamMode, CODATA, DEFAULT_TEMPERATURE,
                   RB87_D1_WAVELENGTH, RB87_MASS_U)
from .errors import ConfigError, InsufficientSamples, QuadratureFailure
from .lineshape import Method, ResonanceModel, compute_lineshape
from .montecarlo import McConfig, absolute_std_error, mc_signal, z_scores
from .units import b_to_delta, delta_to_b, hz_to_rad, rad_to_hz

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_QUADRATURE = 3
EXIT_STATISTICAL = 4
EXIT_INSUFFICIENT_SAMPLES = 5

_METHODS = {m.value: m for m in Method if m is not Method.MonteCarlo}

DEFAULT_W_PER_L_MM = [0.5, 0.65, 0.74, 0.83, 0.89]


@dataclass
class RunConfig:
    """Fully resolved run parameters in internal units (rad/s, m, K, T)."""

    mass_kg: float = RB87_MASS_U * CODATA.atomic_mass_unit_u
    g_factor: float = 0.5
    wavelength_m: float = RB87_D1_WAVELENGTH
    temperature_k: float = DEFAULT_TEMPERATURE
    gamma_rad_s: float = 2 * math.pi * 52e3
    pairs: list[tuple[int, int]] = field(default_factory=lambda: [(1, 1), (1, -1)])
    w0_m: float = 0.65e-3
    w_override_m: float | None = None   # explicit w(z); forces z=0, w0=w
    z_m: float = 0.0
    delta_min_rad_s: float = -hz_to_rad(600e3)
    delta_max_rad_s: float = hz_to_rad(600e3)
    n_points: int = 201
    method: str = "closed-form"
    mc_n_samples: int = 1_000_000
    mc_seed: int = 12345
    mc_max_rel_error: float = 0.05
    sweep_l_max: int = 4
    sweep_w_per_l_m: list[float] = field(
        default_factory=lambda: [w * 1e-3 for w in DEFAULT_W_PER_L_MM])

    def ensemble(self) -> AtomEnsemble:
        return AtomEnsemble(mass_m=self.mass_kg, temperature_T=self.temperature_k,
                            gyro_g=self.g_factor, gamma=self.gamma_rad_s)

    def beam(self, l: int) -> BeamMode:
        if self.w_override_m is not None:
            return BeamMode(charge_l=l, waist_w0=self.w_override_m,
                            wavelength=self.wavelength_m, z=0.0)
        return BeamMode(charge_l=l, waist_w0=self.w0_m,
                        wavelength=self.wavelength_m, z=self.z_m)

    def model(self, l1: int, l2: int) -> ResonanceModel:
        return ResonanceModel(ensemble=self.ensemble(), beam1=self.beam(l1),
                              beam2=self.beam(l2))

    def delta_grid(self) -> np.ndarray:
        return np.linspace(self.delta_min_rad_s, self.delta_max_rad_s,
                           self.n_points)

    def as_manifest_dict(self) -> dict:
        return {
            "mass_kg": self.mass_kg,
            "g_factor": self.g_factor,
            "wavelength_m": self.wavelength_m,
            "temperature_k": self.temperature_k,
            "gamma_rad_s": self.gamma_rad_s,
            "pairs": [list(p) for p in self.pairs],
            "w0_m": self.w0_m,
            "w_override_m": self.w_override_m,
            "z_m": self.z_m,
            "delta_min_rad_s": self.delta_min_rad_s,
            "delta_max_rad_s": self.delta_max_rad_s,
            "n_points": self.n_points,
            "method": self.method,
            "mc_n_samples": self.mc_n_samples,
            "mc_seed": self.mc_seed,
            "mc_max_rel_error": self.mc_max_rel_error,
            "sweep_l_max": self.sweep_l_max,
            "sweep_w_per_l_m": self.sweep_w_per_l_m,
        }


def _get(section: dict, key: str, kind, where: str):
    value = section.pop(key)
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ConfigError(f"[{where}] {key}: expected {kind.__name__}, "
                          f"got {type(value).__name__}")
    return value


def _reject_leftovers(section: dict, where: str):
    if section:
        raise ConfigError(f"[{where}] unknown keys: {', '.join(sorted(section))}")


def load_config(path: Path | None) -> RunConfig:
    cfg = RunConfig()
    if path is None:
        return cfg
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    species = data.pop("species", {})
    if "mass_u" in species:
        cfg.mass_kg = _get(species, "mass_u", float, "species") \
            * CODATA.atomic_mass_unit_u
    if "g_factor" in species:
        cfg.g_factor = _get(species, "g_factor", float, "species")
    if "wavelength_nm" in species:
        cfg.wavelength_m = _get(species, "wavelength_nm", float, "species") * 1e-9
    _reject_leftovers(species, "species")

    ensemble = data.pop("ensemble", {})
    if "temperature_k" in ensemble:
        cfg.temperature_k = _get(ensemble, "temperature_k", float, "ensemble")
    if "gamma_khz" in ensemble:
        cfg.gamma_rad_s = hz_to_rad(_get(ensemble, "gamma_khz", float,
                                         "ensemble") * 1e3)
    _reject_leftovers(ensemble, "ensemble")

    beams = data.pop("beams", {})
    if "pairs" in beams:
        raw = _get(beams, "pairs", list, "beams")
        pairs = []
        for entry in raw:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not all(isinstance(l, int) for l in entry)):
                raise ConfigError("[beams] pairs: each entry must be [l1, l2]")
            pairs.append((entry[0], entry[1]))
        if not pairs:
            raise ConfigError("[beams] pairs must not be empty")
        cfg.pairs = pairs
    if "w0_mm" in beams:
        cfg.w0_m = _get(beams, "w0_mm", float, "beams") * 1e-3
    if "w_mm" in beams:
        cfg.w_override_m = _get(beams, "w_mm", float, "beams") * 1e-3
    if "z_m" in beams:
        cfg.z_m = _get(beams, "z_m", float, "beams")
    _reject_leftovers(beams, "beams")

    scan = data.pop("scan", {})
    ens = cfg.ensemble()
    has_hz = "delta_min_khz" in scan or "delta_max_khz" in scan
    has_b = "b_min_ut" in scan or "b_max_ut" in scan
    if has_hz and has_b:
        raise ConfigError("[scan] give either delta_*_khz or b_*_ut, not both")
    if has_hz:
        cfg.delta_min_rad_s = hz_to_rad(_get(scan, "delta_min_khz", float,
                                             "scan") * 1e3)
        cfg.delta_max_rad_s = hz_to_rad(_get(scan, "delta_max_khz", float,
                                             "scan") * 1e3)
    if has_b:
        cfg.delta_min_rad_s = b_to_delta(_get(scan, "b_min_ut", float,
                                              "scan") * 1e-6, ens)
        cfg.delta_max_rad_s = b_to_delta(_get(scan, "b_max_ut", float,
                                              "scan") * 1e-6, ens)
    if "n_points" in scan:
        cfg.n_points = _get(scan, "n_points", int, "scan")
    if "method" in scan:
        cfg.method = _get(scan, "method", str, "scan")
    _reject_leftovers(scan, "scan")

    mc = data.pop("mc", {})
    if "n_samples" in mc:
        cfg.mc_n_samples = _get(mc, "n_samples", int, "mc")
    if "seed" in mc:
        cfg.mc_seed = _get(mc, "seed", int, "mc")
    if "max_rel_error" in mc:
        cfg.mc_max_rel_error = _get(mc, "max_rel_error", float, "mc")
    _reject_leftovers(mc, "mc")

    sweep = data.pop("sweep", {})
    if "l_max" in sweep:
        cfg.sweep_l_max = _get(sweep, "l_max", int, "sweep")
    if "w_per_l_mm" in sweep:
        raw = _get(sweep, "w_per_l_mm", list, "sweep")
        if not all(isinstance(w, (int, float)) and not isinstance(w, bool)
                   for w in raw):
            raise ConfigError("[sweep] w_per_l_mm must be a list of numbers")
        cfg.sweep_w_per_l_m = [float(w) * 1e-3 for w in raw]
    _reject_leftovers(sweep, "sweep")

    _reject_leftovers(data, "top level")
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig):
    try:
        cfg.ensemble()
        for l1, l2 in cfg.pairs:
            cfg.model(l1, l2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.delta_min_rad_s >= cfg.delta_max_rad_s:
        raise ConfigError("[scan] delta_min must be below delta_max")
    if cfg.n_points < 5:
        raise ConfigError("[scan] n_points must be >= 5")
    if cfg.method not in _METHODS and cfg.method != "monte-carlo":
        raise ConfigError(f"[scan] unknown method {cfg.method!r}; choose from "
                          f"{sorted(_METHODS)} or 'monte-carlo'")
    if cfg.mc_n_samples < 1:
        raise ConfigError("[mc] n_samples must be >= 1")
    if not 0 < cfg.mc_max_rel_error:
        raise ConfigError("[mc] max_rel_error must be positive")
    if cfg.sweep_l_max < 0:
        raise ConfigError("[sweep] l_max must be >= 0")
    if len(cfg.sweep_w_per_l_m) != cfg.sweep_l_max + 1:
        raise ConfigError("[sweep] w_per_l_mm needs l_max + 1 entries")
    for l1, l2 in cfg.pairs:
        if abs(l1) != abs(l2):
            raise ConfigError(f"[beams] pair [{l1}, {l2}]: |l1| must equal |l2|")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: list[str], rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_manifest(out_dir: Path, command: str, cfg: RunConfig,
                    files: list[str], extra: dict | None = None):
    manifest = {
        "command": command,
        "config": cfg.as_manifest_dict(),
        "files": files,
        "rotodop_version": _version(),
    }
    if extra:
        manifest.update(extra)
    with open(out_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _version() -> str:
    try:
        return _pkg_version("rotodop")
    except Exception:
        return "unknown"


def cmd_scan(cfg: RunConfig, out_dir: Path) -> int:
    ens = cfg.ensemble()
    grid = cfg.delta_grid()
    files = []
    for l1, l2 in cfg.pairs:
        model = cfg.model(l1, l2)
        if cfg.method == "monte-carlo":
            mc_cfg = McConfig(n_samples=cfg.mc_n_samples, seed=cfg.mc_seed,
                              delta_grid=grid,
                              max_rel_error=cfg.mc_max_rel_error)
            shape = mc_signal(model, mc_cfg).lineshape
        else:
            shape = compute_lineshape(model, grid, _METHODS[cfg.method])
        deriv = derivative_signal(shape)
        name = f"scan_l1_{l1}_l2_{l2}.csv"
        rows = ((d, rad_to_hz(d), delta_to_b(d, ens), s, ds)
                for d, s, ds in zip(shape.deltas, shape.values, deriv.values))
        _write_csv(out_dir / name,
                   ["delta_rad_s", "delta_hz", "b_field_tesla",
                    "signal_norm", "derivative"], rows)
        files.append(name)
    _write_manifest(out_dir, "scan", cfg, files)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out_dir: Path) -> int:
    base = cfg.model(1, 1)
    result = sweep_widths(base, cfg.sweep_l_max, cfg.sweep_w_per_l_m)
    rows = ((l, rad_to_hz(we), rad_to_hz(wo), rad_to_hz(fo), w * 1e3)
            for l, we, wo, fo, w in zip(result.l_values, result.width_equal,
                                        result.width_opposite,
                                        result.fwhm_opposite, result.w_of_z))
    name = "sweep_widths.csv"
    _write_csv(out_dir / name,
               ["l", "width_equal_hz", "width_opposite_hz",
                "fwhm_opposite_hz", "w_of_z_mm"], rows)
    _write_manifest(out_dir, "sweep", cfg, [name])
    return EXIT_OK


def cmd_mc_check(cfg: RunConfig, out_dir: Path) -> int:
    pair = next(((l1, l2) for l1, l2 in cfg.pairs if l1 != l2), cfg.pairs[0])
    model = cfg.model(*pair)
    grid = cfg.delta_grid()
    mc_cfg = McConfig(n_samples=cfg.mc_n_samples, seed=cfg.mc_seed,
                      delta_grid=grid, max_rel_error=cfg.mc_max_rel_error)
    mc = mc_signal(model, mc_cfg)
    method = Method.ClosedConvolution
    reference = compute_lineshape(model, grid, method)

    se = absolute_std_error(mc)
    z = z_scores(mc, reference)

    name = "mc_check.csv"
    rows = ((d, m, r, s, zz) for d, m, r, s, zz
            in zip(grid, mc.lineshape.values, reference.values, se, z))
    _write_csv(out_dir / name,
               ["delta_rad_s", "mc_norm", "reference_norm",
                "std_error_abs", "z_score"], rows)
    fraction_ok = float(np.mean(np.abs(z) < 4.0))
    _write_manifest(out_dir, "mc-check", cfg, [name],
                    extra={"pair": list(pair), "fraction_within_4se": fraction_ok})
    if fraction_ok < 0.99:
        print(f"mc-check FAILED: only {fraction_ok:.4f} of points within "
              "4 combined standard errors", file=sys.stderr)
        return EXIT_STATISTICAL
    print(f"mc-check ok: {fraction_ok:.4f} of points within 4 standard errors")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotodop",
        description="Rotational-Doppler broadening of Hanle/EIT resonances "
                    "from Laguerre-Gaussian beams in thermal Rb vapor.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("scan", "lineshape and derivative over a detuning grid"),
            ("sweep", "peak-to-peak width vs topological charge"),
            ("mc-check", "Monte Carlo vs closed-form statistical check")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, default=None,
                       help="TOML run configuration (defaults used if omitted)")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (created if missing)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the Monte Carlo seed")
        p.add_argument("--points", type=int, default=None,
                       help="override the number of scan grid points")
    return parser


_DISPATCH = {"scan": cmd_scan, "sweep": cmd_sweep, "mc-check": cmd_mc_check}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg.mc_seed = args.seed
        if args.points is not None:
            cfg.n_points = args.points
        validate_config(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    try:
        return _DISPATCH[args.command](cfg, out_dir)
    except QuadratureFailure as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except InsufficientSamples as exc:
        print(f"insufficient samples: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT_SAMPLES


if __name__ == "__main__":
    sys.exit(main())

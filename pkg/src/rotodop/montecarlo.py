"""Stochastic evaluation of the ensemble signal, independent of the quadrature path.

Atoms are importance-sampled from the product-intensity radial density
2 pi r I1(r) I2(r) and the thermal azimuthal-velocity Gaussian, so each
sample contributes only the Lorentzian factor. The signal at every grid
detuning is the sample mean of that factor; per-point standard errors come
from batch means.

RNG: numpy PCG64 seeded through SeedSequence. Batches draw from
SeedSequence(seed).spawn(n_batches) on a fixed schedule and are reduced in
batch order, so the result is bit-identical for a given (seed, config,
model) regardless of how batches are scheduled across workers. Samples are
shared across all grid points (no per-point streams), which keeps the MC
curve smooth in delta.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import math
import os

import numpy as np
from scipy.stats import gamma as _gamma_dist

from .errors import InsufficientSamples
from .lineshape import LineshapeResult, Method, ResonanceModel, lorentzian
from .doppler import rotational_shift_coefficient


def worker_count() -> int:
    """Worker cap from ROTODOP_THREADS (default 1); never changes results."""
    try:
        return max(1, int(os.environ.get("ROTODOP_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class McConfig:
    n_samples: int
    seed: int
    delta_grid: np.ndarray              # rad/s, strictly increasing
    stratify_r: bool = False
    n_batches: int = 16
    max_rel_error: float = 0.05         # cap on per-point relative std error

    def __post_init__(self):
        grid = np.asarray(self.delta_grid, dtype=float)
        object.__setattr__(self, "delta_grid", grid)
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.n_batches < 2:
            raise ValueError("n_batches must be >= 2")
        if grid.ndim != 1 or grid.size < 2 or not np.all(np.diff(grid) > 0):
            raise ValueError("delta_grid must be strictly increasing")


@dataclass(frozen=True)
class McResult:
    lineshape: LineshapeResult
    std_error: np.ndarray               # per-point relative standard error

    def __post_init__(self):
        se = np.asarray(self.std_error, dtype=float)
        object.__setattr__(self, "std_error", se)
        if not np.all(np.isfinite(se)) or np.any(se < 0):
            raise ValueError("std_error must be finite and nonnegative")


def sample_atom(model: ResonanceModel, rng: np.random.Generator,
                size: int | None = None, stratify_r: bool = False):
    """Draw (r, V_phi) pairs from the signal's importance density.

    r: with u = 4 r^2 / w^2, the density 2 pi r I1 I2 dr maps to a Gamma
    distribution of shape |l1|+|l2|+1 in u, so r = w sqrt(u)/2.
    V_phi: zero-mean Gaussian of variance 1/(2 alpha).
    """
    shape = abs(model.l1) + abs(model.l2) + 1
    w = model.w_z()
    n = 1 if size is None else size
    if stratify_r:
        # One stratum per sample: inverse-CDF on jittered, shuffled uniforms.
        u01 = (np.arange(n) + rng.random(n)) / n
        rng.shuffle(u01)
        u = _gamma_dist.ppf(u01, shape)
    else:
        u = rng.gamma(shape, size=n)
    r = w * np.sqrt(u) / 2.0
    sigma_v = 1.0 / math.sqrt(2.0 * model.ensemble.alpha())
    v_phi = rng.normal(0.0, sigma_v, size=n)
    if size is None:
        return float(r[0]), float(v_phi[0])
    return r, v_phi


def _batch_sizes(n_samples: int, n_batches: int) -> list[int]:
    base, extra = divmod(n_samples, n_batches)
    return [base + (1 if i < extra else 0) for i in range(n_batches)]


def _batch_mean(model: ResonanceModel, cfg: McConfig, seed_seq, n: int):
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    r, v_phi = sample_atom(model, rng, size=n, stratify_r=cfg.stratify_r)
    coeff = rotational_shift_coefficient(model.beam1, model.beam2)
    dprime = coeff * v_phi / r
    gamma = model.ensemble.gamma
    # mean over samples of L(delta' - delta) for every grid point
    return lorentzian(gamma, dprime[:, None] - cfg.delta_grid[None, :]).mean(axis=0)


def mc_signal(model: ResonanceModel, cfg: McConfig) -> McResult:
    """Monte Carlo estimate of the unit-peak lineshape with batch-means errors."""
    if abs(model.l1) != abs(model.l2):
        raise ValueError("Monte Carlo sampling requires |l1| == |l2|")

    sizes = _batch_sizes(cfg.n_samples, cfg.n_batches)
    if min(sizes) < 1:
        raise InsufficientSamples(
            f"{cfg.n_samples} samples cannot fill {cfg.n_batches} batches")
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.n_batches)

    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_batch_mean, model, cfg, ss, n)
                       for ss, n in zip(children, sizes)]
            batch_means = np.array([f.result() for f in futures])
    else:
        batch_means = np.array([_batch_mean(model, cfg, ss, n)
                                for ss, n in zip(children, sizes)])

    weights = np.asarray(sizes, dtype=float) / cfg.n_samples
    values = weights @ batch_means
    se = batch_means.std(axis=0, ddof=1) / math.sqrt(cfg.n_batches)

    peak = float(values.max())
    if not peak > 0:
        raise InsufficientSamples("signal estimate vanished on the whole grid")
    norm = values / peak
    se_norm = se / peak
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(norm > 0, se_norm / norm, np.inf)
    # Degenerate charges give delta'=0 for every sample: zero-variance estimator.
    if model.l1 == model.l2:
        rel = np.zeros_like(rel)
        se_norm = np.zeros_like(se_norm)
    if np.any(rel > cfg.max_rel_error):
        raise InsufficientSamples(
            f"max relative std error {np.max(rel):.3g} exceeds cap "
            f"{cfg.max_rel_error:g}; increase n_samples")

    shape = LineshapeResult(deltas=cfg.delta_grid, values=norm,
                            method=Method.MonteCarlo,
                            error_estimate=float(np.max(rel)), raw_peak=peak)
    return McResult(lineshape=shape, std_error=rel)


def absolute_std_error(result: McResult) -> np.ndarray:
    """Per-point absolute standard error on the unit-peak scale."""
    return result.std_error * result.lineshape.values


def z_scores(result: McResult, reference: LineshapeResult) -> np.ndarray:
    """Per-point z-scores of the MC curve against a deterministic reference.

    The combined error adds, in quadrature: the per-point MC error, the
    error the noisy peak estimate injects through the unit-peak
    normalization (a conservative bound: the positive MC covariance between
    a point and the peak is dropped), and the reference's own numerical
    error.
    """
    values = result.lineshape.values
    se = absolute_std_error(result)
    se_peak = se[int(np.argmax(values))]
    ref_err = reference.error_estimate * reference.values
    combined = np.sqrt(se**2 + (values * se_peak) ** 2 + ref_err**2)
    diff = values - reference.values
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(combined > 0, diff / combined,
                        np.where(diff == 0, 0.0, np.inf))

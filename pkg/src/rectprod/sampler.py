from __future__ import annotations

import logging
import math

import numpy as np
from scipy import special

from .chain_spec import ChainSpec
from .config import DEFAULT_NUMERICS, NumericsConfig
from .errors import DomainError, NumericalBreakdown
from .models import OracleSample, ScaledProduct

logger = logging.getLogger(__name__)

SEED_MAX = 2**64 - 1


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """Counter-based (Philox) stream for ``seed``; ``key`` selects an independent substream."""
    if not 0 <= int(seed) <= SEED_MAX:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(sequence))


def sample_ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """rows x cols matrix of standard complex normals, E|Z|^2 = 1."""
    if rows < 1 or cols < 1:
        raise DomainError(f"matrix shape must be positive, got {rows}x{cols}")
    scale = math.sqrt(0.5)
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return (real + 1j * imag) * scale


def _normalize(matrix: np.ndarray) -> tuple[np.ndarray, float]:
    norm = float(np.linalg.norm(matrix))
    if norm == 0.0:
        return matrix, 0.0
    if not math.isfinite(norm):
        raise NumericalBreakdown("non-finite entry in running product")
    return matrix / norm, math.log(norm)


def product_chain(spec: ChainSpec, rng: np.random.Generator) -> ScaledProduct:
    """X_1 X_2 ... X_m with a Frobenius normalization after every step.

    Each factor is drawn from its own child stream of ``rng``.
    """
    streams = rng.spawn(spec.m)
    running = sample_ginibre(spec.dims[0], spec.dims[1], streams[0])
    running, log_scale = _normalize(running)
    for j in range(1, spec.m):
        factor = sample_ginibre(spec.dims[j], spec.dims[j + 1], streams[j])
        running, step = _normalize(running @ factor)
        log_scale += step
    if not np.all(np.isfinite(running)):
        raise NumericalBreakdown("non-finite entry in product matrix")
    logger.debug("product_chain n=%d m=%d log_scale=%.6g", spec.n, spec.m, log_scale)
    return ScaledProduct(matrix=running, log_scale=log_scale)


def _gamma_shapes(spec: ChainSpec, j: np.ndarray) -> np.ndarray:
    # shape l_r + j, rows r = 1..m
    return spec.offsets[:, None].astype(np.float64) + j[None, :].astype(np.float64)


def _log_gamma_products(shapes: np.ndarray, rng: np.random.Generator, size: tuple, config: NumericsConfig) -> np.ndarray:
    draws = rng.standard_gamma(shapes, size=size)
    if np.any(draws < config.gamma_floor):
        raise NumericalBreakdown("Gamma draw underflowed below the configured floor")
    return np.log(draws)


def sample_oracle(
    spec: ChainSpec,
    rng: np.random.Generator,
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> OracleSample:
    """log T_j = sum_r log s_{j,r} with s_{j,r} ~ Gamma(l_r + j), j = 1..n."""
    shapes = _gamma_shapes(spec, np.arange(1, spec.n + 1))
    log_draws = _log_gamma_products(shapes, rng, shapes.shape, config)
    return OracleSample(log_t=log_draws.sum(axis=0))


def sample_log_t(
    spec: ChainSpec,
    j: int,
    replicates: int,
    rng: np.random.Generator,
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> np.ndarray:
    """``replicates`` independent copies of log T_j."""
    if not 1 <= j <= spec.n:
        raise DomainError(f"j must lie in 1..{spec.n}, got {j}")
    shapes = _gamma_shapes(spec, np.asarray([j]))[:, 0]
    log_draws = _log_gamma_products(shapes, rng, (replicates, spec.m), config)
    return log_draws.sum(axis=1)


def expected_log_t(spec: ChainSpec, j: int) -> float:
    """E ln T_j = sum_r psi(l_r + j)."""
    if not 1 <= j <= spec.n:
        raise DomainError(f"j must lie in 1..{spec.n}, got {j}")
    return float(special.digamma(spec.offsets.astype(np.float64) + j).sum())

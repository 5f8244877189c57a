"""Scaled empirical measures and their goodness-of-fit statistics.

Radii are produced in log domain and exponentiated once, after the h_n
scaling has brought them into O(1) range. None of the statistics come
with p-values: eigenvalues repel each other, so i.i.d. reference
distributions do not apply and thresholds are calibrated instead.
"""
from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import optimize, stats

from .chain_spec import ChainSpec, g_n_eval, lambda_k, log_a_n
from .config import DEFAULT_NUMERICS, NumericsConfig
from .errors import ConvergenceFailure, DomainError, EmptySample
from .limit_law import LimitLaw, f_star_eval, quantiles
from .models import (
    GofReport,
    LawType,
    PlanarSample,
    RadialSample,
    SampleSource,
    SpectralSample,
    TnLimitSummary,
)
from .sampler import sample_log_t

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

Cdf = Callable[[float], float]


def h_transform(
    log_moduli: Sequence[float],
    spec: ChainSpec,
    source: SampleSource = SampleSource.EIGEN,
) -> RadialSample:
    """h_n(r) = r^(2/gamma) / a_n evaluated as exp(2 ln r / gamma - ln a_n)."""
    logs = np.asarray(log_moduli, dtype=np.float64)
    radii = np.exp(2.0 * logs / spec.gamma - log_a_n(spec))
    return RadialSample(radii=radii, source=source)


def linear_transform(
    log_moduli: Sequence[float],
    spec: ChainSpec,
    source: SampleSource = SampleSource.EIGEN,
) -> RadialSample:
    """r / a_n with a_n = prod n_r^(1/2), the linear scaling behind mu*_n and nu*_n."""
    return h_transform(log_moduli, replace(spec, gamma=2.0), source)


def planar_sample(spectrum: SpectralSample, radial: RadialSample) -> PlanarSample:
    return PlanarSample(radii=radial.radii, angles=spectrum.angle)


def _sorted_values(sample: Union[RadialSample, np.ndarray]) -> np.ndarray:
    values = sample.radii if isinstance(sample, RadialSample) else np.asarray(sample, dtype=np.float64)
    if values.size == 0:
        raise EmptySample("sample is empty")
    return np.sort(values)


def ecdf(sample: RadialSample, x: float) -> float:
    values = _sorted_values(sample)
    return float(np.searchsorted(values, x, side="right")) / values.size


def _sup_distance(values: np.ndarray, cdf: Cdf) -> float:
    # exact sup |ECDF - cdf| for a non-decreasing cdf: compare at every jump
    # point and at its left limit
    n = values.size
    support, counts = np.unique(values, return_counts=True)
    upper = np.cumsum(counts) / n
    lower = np.concatenate(([0.0], upper[:-1]))
    at = np.asarray([cdf(float(x)) for x in support], dtype=np.float64)
    before = np.asarray([cdf(float(np.nextafter(x, -np.inf))) for x in support], dtype=np.float64)
    return float(max(np.max(np.abs(upper - at)), np.max(np.abs(lower - before))))


def ks_one_sample(sample: RadialSample, cdf: Cdf) -> float:
    return _sup_distance(_sorted_values(sample), cdf)


def ks_two_sample(a: RadialSample, b: RadialSample) -> float:
    left, right = _sorted_values(a), _sorted_values(b)
    return float(stats.ks_2samp(left, right, method="asymp").statistic)


def _cdf_quantile(cdf: Cdf, p: float, config: NumericsConfig) -> float:
    """inf{x >= 0 : cdf(x) >= p}, bracketed by doubling from [0, 1]."""
    if cdf(0.0) >= p:
        return 0.0
    hi = 1.0
    for _ in range(config.bisection_maxiter):
        if cdf(hi) >= p:
            break
        hi *= 2.0
    else:
        raise ConvergenceFailure(f"no x with cdf(x) >= {p} below {hi}")
    try:
        return float(
            optimize.bisect(
                lambda x: cdf(x) - p,
                0.0,
                hi,
                xtol=config.bisection_xtol,
                rtol=config.bisection_rtol,
                maxiter=config.bisection_maxiter,
            )
        )
    except RuntimeError as exc:
        raise ConvergenceFailure(f"cdf quantile at {p} did not converge: {exc}") from exc


def wasserstein1(
    a: RadialSample,
    b: Union[RadialSample, LimitLaw, Cdf],
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> float:
    """Order-statistics coupling against a sample, a law, or a cdf.

    Laws and cdfs contribute their quantiles at (j - 0.5) / n.
    """
    left = _sorted_values(a)
    n = left.size
    probs = (np.arange(1, n + 1) - 0.5) / n
    if isinstance(b, RadialSample):
        right = _sorted_values(b)
        if right.size != n:
            return float(stats.wasserstein_distance(left, right))
    elif isinstance(b, LimitLaw):
        right = quantiles(b, probs)
    else:
        right = np.asarray([_cdf_quantile(b, float(p), config) for p in probs], dtype=np.float64)
    return float(np.mean(np.abs(left - right)))


def _uniform_cdf(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def angle_uniformity(p: PlanarSample) -> float:
    if len(p) == 0:
        raise EmptySample("planar sample is empty")
    return _sup_distance(np.sort(p.angles / TWO_PI), _uniform_cdf)


def ring_coverage(p: PlanarSample, inner: float, outer: float, slack: float = DEFAULT_NUMERICS.ring_slack) -> float:
    if not 0.0 <= inner <= outer:
        raise DomainError(f"ring needs 0 <= inner <= outer, got [{inner}, {outer}]")
    if len(p) == 0:
        return 0.0
    inside = (p.radii >= inner - slack) & (p.radii <= outer + slack)
    return float(np.count_nonzero(inside)) / len(p)


def support_ring(law: Optional[LimitLaw]) -> Tuple[float, float]:
    """Radial support [inner, outer] of the limiting scaled spectrum."""
    if law is None:
        return 0.0, 1.0
    if law.type_tag == LawType.TYPE_II:
        return 1.0, 1.0
    if law.type_tag == LawType.TYPE_III:
        return 0.0, 0.0
    return float(law.f_zero), 1.0


def law_cdf(law: LimitLaw, config: NumericsConfig = DEFAULT_NUMERICS) -> Cdf:
    """Radial CDF F* of a limit law as a plain callable."""
    return lambda y: f_star_eval(law, y, config)


def tnlimit_diagnostic(
    spec: ChainSpec,
    x: float,
    replicates: int,
    rng: np.random.Generator,
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> TnLimitSummary:
    """Mean and spread of (1/lambda_1) ln(T_[nx] / prod_r (l_r + n)) - ln G_n(x)."""
    if not 0.0 < x <= 1.0:
        raise DomainError(f"x must lie in (0, 1], got {x}")
    if replicates < 100:
        raise DomainError(f"need at least 100 replicates, got {replicates}")
    j = max(1, int(math.floor(spec.n * x + 1e-9)))
    log_t = sample_log_t(spec, j, replicates, rng, config)
    log_norm = float(np.log(spec.offsets.astype(np.float64) + spec.n).sum())
    d = (log_t - log_norm) / lambda_k(spec, 1) - g_n_eval(spec, x)
    return TnLimitSummary(x=x, j=j, mean=float(d.mean()), std=float(d.std(ddof=1)), replicates=replicates)


def gof_report(
    radial: RadialSample,
    planar: PlanarSample,
    law: Optional[LimitLaw],
    n: int,
    m: int,
    seed: int,
    trials: int = 1,
    oracle: Optional[RadialSample] = None,
    slack: float = DEFAULT_NUMERICS.ring_slack,
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> GofReport:
    inner, outer = support_ring(law)
    ks_radial = wasserstein = None
    if law is not None:
        ks_radial = ks_one_sample(radial, law_cdf(law, config))
        wasserstein = wasserstein1(radial, law)
    report = GofReport(
        n=n,
        m=m,
        seed=seed,
        trials=trials,
        ring_inner=inner,
        ring_outer=outer,
        ring_coverage=ring_coverage(planar, inner, outer, slack),
        angle_ks=angle_uniformity(planar),
        ks_radial=ks_radial,
        wasserstein_radial=wasserstein,
        ks_two_sample=ks_two_sample(radial, oracle) if oracle is not None else None,
        law=law.label if law is not None else None,
    )
    logger.info("gof n=%d m=%d coverage=%.4f ks=%s", n, m, report.ring_coverage, report.ks_radial)
    return report

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NumericsConfig:
    """Tolerances and calibrated thresholds shared by the numerical modules."""

    bisection_xtol: float
    bisection_rtol: float
    bisection_maxiter: int
    theta_cache_size: int
    classify_zero_threshold: float
    classify_infinity_threshold: float
    classify_stability: float
    classify_max_k: int
    ring_slack: float
    gamma_floor: float

    @staticmethod
    def default() -> "NumericsConfig":
        return NumericsConfig(
            bisection_xtol=1e-300,
            # scipy.optimize.bisect rejects anything below 4 * eps
            bisection_rtol=4.0 * float(np.finfo(float).eps),
            bisection_maxiter=200,
            theta_cache_size=64,
            classify_zero_threshold=1e-3,
            classify_infinity_threshold=1e3,
            classify_stability=0.05,
            classify_max_k=6,
            ring_slack=0.05,
            gamma_floor=1e-300,
        )


DEFAULT_NUMERICS = NumericsConfig.default()

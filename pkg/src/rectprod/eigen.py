from __future__ import annotations

import logging
import math

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, NumericalBreakdown
from .models import ScaledProduct, SpectralCheck, SpectralSample

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def _complex_eigvals(matrix: np.ndarray) -> np.ndarray:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise NumericalBreakdown(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise NumericalBreakdown("matrix has non-finite entries")
    # LAPACK *geev: balancing, Hessenberg reduction, shifted QR
    # (iteration cap 30 sweeps per eigenvalue inside the driver)
    try:
        return scipy.linalg.eigvals(np.asarray(matrix, dtype=np.complex128), check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"QR iteration did not converge: {exc}") from exc


def eigenvalues(p: ScaledProduct) -> SpectralSample:
    """All eigenvalues of exp(log_scale) * matrix in log-polar form.

    Sorted by descending log-modulus, ties broken by angle. Exact zeros map
    to log-modulus -inf and angle 0.
    """
    lam = _complex_eigvals(p.matrix)
    with np.errstate(divide="ignore"):
        log_modulus = np.log(np.abs(lam))
    angle = np.mod(np.angle(lam), TWO_PI)
    zero = lam == 0
    angle[zero] = 0.0
    # mod can round a tiny negative angle up to exactly 2*pi
    angle[angle >= TWO_PI] = 0.0
    log_modulus = log_modulus + p.log_scale
    order = np.lexsort((angle, -log_modulus))
    return SpectralSample(log_modulus=log_modulus[order], angle=angle[order])


def log_det(matrix: np.ndarray) -> float:
    """log|det| from an LU factorization, accumulated in log-magnitude."""
    if matrix.shape[0] == 0:
        return 0.0
    lu, _ = scipy.linalg.lu_factor(np.asarray(matrix, dtype=np.complex128), check_finite=False)
    with np.errstate(divide="ignore"):
        return float(np.log(np.abs(np.diag(lu))).sum())


def spectral_invariant_check(p: ScaledProduct, s: SpectralSample) -> SpectralCheck:
    """Trace and log-determinant residuals of ``s`` against ``p.matrix``.

    Both sides are taken for the normalized matrix; the log-scale is removed
    from the sample first.
    """
    log_modulus = s.log_modulus - p.log_scale
    with np.errstate(invalid="ignore"):
        lam = np.exp(log_modulus) * np.exp(1j * s.angle)
    lam[np.isneginf(log_modulus)] = 0.0
    norm = float(np.linalg.norm(p.matrix)) or 1.0
    trace_residual = abs(complex(lam.sum()) - complex(np.trace(p.matrix))) / norm

    eigen_side = float(log_modulus.sum())
    lu_side = log_det(p.matrix)
    if math.isinf(eigen_side) and math.isinf(lu_side) and eigen_side == lu_side:
        log_det_residual = 0.0
    else:
        log_det_residual = abs(eigen_side - lu_side)
    logger.debug("spectral check trace=%.3g logdet=%.3g", trace_residual, log_det_residual)
    return SpectralCheck(
        trace_residual=trace_residual,
        log_det_residual=log_det_residual,
        log_det_eigen=eigen_side,
        log_det_lu=lu_side,
    )

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np


class LawType(str, Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"


class TailKind(str, Enum):
    ZERO = "zero"
    CONSTANT = "constant"
    GEOMETRIC = "geometric"
    MIXTURE = "mixture"


class CoefficientKind(str, Enum):
    EXPLICIT = "explicit-sequence"
    CALLABLE = "closed-form-callable"


class SampleSource(str, Enum):
    EIGEN = "eigen"
    ORACLE = "oracle"


class Verdict(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class ScaledProduct:
    """Represents ``exp(log_scale) * matrix``."""

    matrix: np.ndarray
    log_scale: float

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class OracleSample:
    log_t: np.ndarray

    @property
    def log_y(self) -> np.ndarray:
        # Y_j = sqrt(T_j)
        return self.log_t / 2.0


@dataclass(frozen=True, eq=False)
class SpectralSample:
    log_modulus: np.ndarray
    angle: np.ndarray

    def __post_init__(self) -> None:
        if self.log_modulus.shape != self.angle.shape:
            raise ValueError("log_modulus and angle must have equal length")
        if np.any((self.angle < 0.0) | (self.angle >= 2.0 * math.pi)):
            raise ValueError("angles must lie in [0, 2*pi)")

    @property
    def n(self) -> int:
        return int(self.log_modulus.shape[0])


@dataclass(frozen=True)
class SpectralCheck:
    trace_residual: float
    log_det_residual: float
    log_det_eigen: float
    log_det_lu: float


@dataclass(frozen=True, eq=False)
class RadialSample:
    radii: np.ndarray
    source: SampleSource

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.radii)):
            raise ValueError("radii must be finite")
        if np.any(self.radii < 0.0):
            raise ValueError("radii must be non-negative")

    def __len__(self) -> int:
        return int(self.radii.shape[0])


@dataclass(frozen=True, eq=False)
class PlanarSample:
    radii: np.ndarray
    angles: np.ndarray

    def __post_init__(self) -> None:
        if self.radii.shape != self.angles.shape:
            raise ValueError("radii and angles must have equal length")
        if not (np.all(np.isfinite(self.radii)) and np.all(np.isfinite(self.angles))):
            raise ValueError("planar sample entries must be finite")

    def __len__(self) -> int:
        return int(self.radii.shape[0])

    def cartesian(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.radii * np.cos(self.angles), self.radii * np.sin(self.angles)


@dataclass(frozen=True)
class GofReport:
    n: int
    m: int
    seed: int
    trials: int
    ring_inner: float
    ring_outer: float
    ring_coverage: float
    angle_ks: float
    ks_radial: Optional[float] = None
    wasserstein_radial: Optional[float] = None
    ks_two_sample: Optional[float] = None
    law: Optional[str] = None


@dataclass(frozen=True)
class TnLimitSummary:
    x: float
    j: int
    mean: float
    std: float
    replicates: int


@dataclass(frozen=True)
class TypeDiagnostics:
    probe_sizes: List[int]
    gammas: List[float]
    c1_estimates: List[float]
    theta_trends: Dict[int, List[float]]
    verdict: Verdict
    c_estimates: List[float] = field(default_factory=list)
    heuristic: bool = True

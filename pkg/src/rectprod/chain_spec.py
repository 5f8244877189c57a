from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_NUMERICS
from .errors import (
    DimensionMismatch,
    DomainError,
    EndpointMismatch,
    MinViolation,
    NonPositiveGamma,
)


@dataclass(frozen=True)
class ChainSpec:
    """Chain of rectangular factors X_j of size n_j x n_{j+1}, j = 1..m.

    ``dims`` holds n_1..n_{m+1}. Construction validates every invariant.
    """

    n: int
    m: int
    dims: Tuple[int, ...]
    gamma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "gamma", float(self.gamma))
        validate(self)

    @property
    def offsets(self) -> np.ndarray:
        """l_j = n_j - n for j = 1..m."""
        return np.asarray(self.dims[: self.m], dtype=np.int64) - self.n

    @cached_property
    def ratios(self) -> np.ndarray:
        """n / n_j for j = 1..m."""
        return self.n / np.asarray(self.dims[: self.m], dtype=np.float64)

    @cached_property
    def _lambda_table(self) -> np.ndarray:
        ks = np.arange(1, DEFAULT_NUMERICS.theta_cache_size + 1, dtype=np.float64)
        return np.power(self.ratios[None, :], ks[:, None]).sum(axis=1)

    @property
    def is_square(self) -> bool:
        return all(d == self.n for d in self.dims)


def validate(spec: ChainSpec) -> None:
    if not spec.gamma > 0 or not math.isfinite(spec.gamma):
        raise NonPositiveGamma(f"gamma must be positive, got {spec.gamma}")
    if spec.n < 1 or spec.m < 1:
        raise DimensionMismatch(f"n and m must be positive, got n={spec.n}, m={spec.m}")
    if len(spec.dims) != spec.m + 1:
        raise DimensionMismatch(f"dims must have length m+1={spec.m + 1}, got {len(spec.dims)}")
    if spec.dims[0] != spec.n or spec.dims[-1] != spec.n:
        raise EndpointMismatch(f"n_1 and n_(m+1) must equal n={spec.n}, got {spec.dims[0]} and {spec.dims[-1]}")
    smallest = min(spec.dims)
    if smallest < spec.n:
        raise MinViolation(f"every n_j must be >= n={spec.n}, found {smallest}")


def lambda_k(spec: ChainSpec, k: int) -> float:
    """lambda_k = sum_j (n/n_j)^k."""
    if k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    table = spec._lambda_table
    if k <= table.shape[0]:
        return float(table[k - 1])
    return float(np.power(spec.ratios, k).sum())


def theta_k(spec: ChainSpec, k: int) -> float:
    return lambda_k(spec, k) / lambda_k(spec, 1)


def c_estimates(spec: ChainSpec, ks: Iterable[int]) -> List[float]:
    """Finite-n coefficient estimates lambda_k / gamma."""
    return [lambda_k(spec, k) / spec.gamma for k in ks]


def _log_factor_sum(spec: ChainSpec, x: float) -> float:
    # sum_j ln((n x + l_j)/(n + l_j)) = sum_j ln(1 - (n/n_j)(1 - x))
    with np.errstate(divide="ignore"):
        return float(np.log1p(-spec.ratios * (1.0 - x)).sum())


def log_f_n_eval(spec: ChainSpec, x: float) -> float:
    if x <= 0.0:
        return -math.inf
    if x >= 1.0:
        return 0.0
    return _log_factor_sum(spec, x) / spec.gamma


def f_n_eval(spec: ChainSpec, x: float) -> float:
    return math.exp(log_f_n_eval(spec, x))


def g_n_eval(spec: ChainSpec, x: float) -> float:
    """ln G_n(x) = (gamma/lambda_1) ln F_n(x), x in (0, 1]."""
    if not 0.0 < x <= 1.0:
        raise DomainError(f"g_n is defined on (0, 1], got {x}")
    if x == 1.0:
        return 0.0
    return _log_factor_sum(spec, x) / lambda_k(spec, 1)


def log_a_n(spec: ChainSpec) -> float:
    return float(np.log(np.asarray(spec.dims[: spec.m], dtype=np.float64)).sum()) / spec.gamma


def expand_dims(raw: Sequence[Union[int, Sequence[int]]]) -> List[int]:
    """Expand run-length entries [[value, count], ...]; plain integers pass through."""
    dims: List[int] = []
    for item in raw:
        if isinstance(item, (list, tuple)):
            if len(item) != 2:
                raise DimensionMismatch(f"run-length entry must be [value, count], got {item!r}")
            value, count = int(item[0]), int(item[1])
            if count < 0:
                raise DimensionMismatch(f"run-length count must be >= 0, got {count}")
            dims.extend([value] * count)
        else:
            dims.append(int(item))
    return dims


def compress_dims(dims: Sequence[int]) -> List[List[int]]:
    runs: List[List[int]] = []
    for d in dims:
        if runs and runs[-1][0] == d:
            runs[-1][1] += 1
        else:
            runs.append([int(d), 1])
    return runs


def from_json(data: Dict[str, Any]) -> ChainSpec:
    try:
        dims = expand_dims(data["dims"])
        n = int(data.get("n", dims[0] if dims else 0))
        m = int(data.get("m", len(dims) - 1))
        gamma = float(data["gamma"])
    except KeyError as exc:
        raise DimensionMismatch(f"chain JSON is missing field {exc.args[0]!r}") from exc
    return ChainSpec(n=n, m=m, dims=tuple(dims), gamma=gamma)


def to_json(spec: ChainSpec, run_length: bool = False) -> Dict[str, Any]:
    dims: Any = compress_dims(spec.dims) if run_length else list(spec.dims)
    return {"n": spec.n, "m": spec.m, "dims": dims, "gamma": spec.gamma}

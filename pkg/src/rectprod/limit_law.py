"""Limiting radial laws F, their generalized inverses and densities.

A Type I law is determined by coefficients c_k through

    F(x) = exp(-sum_k (c_k / k) (1 - x)^k),   x in (0, 1].

Coefficients are a finite head plus a declared tail made of geometric
terms c * rho^k (rho = 1 is a constant tail, no terms is a zero tail).
Every tail rule has a closed-form series, so F, f and F(0+) are summed
exactly and the divergence of sum c_k / k is read off the tail.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .chain_spec import c_estimates, lambda_k, theta_k
from .config import DEFAULT_NUMERICS, NumericsConfig
from .errors import (
    BadParameter,
    ConvergenceFailure,
    DomainError,
    InvalidCoefficients,
    LawTypeError,
    UnknownPreset,
)
from .families import DimensionFamily, GammaRule
from .models import CoefficientKind, LawType, TailKind, TypeDiagnostics, Verdict

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class GeometricTerm:
    c: float
    rho: float


@dataclass(frozen=True)
class CoefficientSource:
    head: Tuple[float, ...]
    tail_kind: TailKind
    tail: Tuple[GeometricTerm, ...] = ()
    kind: CoefficientKind = CoefficientKind.EXPLICIT

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", tuple(float(c) for c in self.head))
        for term in self.tail:
            if not (term.c >= 0.0 and math.isfinite(term.c)):
                raise InvalidCoefficients(f"tail weight must be finite and >= 0, got {term.c}")
            if not 0.0 <= term.rho <= 1.0:
                raise InvalidCoefficients(f"tail ratio must lie in [0, 1], got {term.rho}")
        _check_monotone(self)

    def tail_value(self, k: int) -> float:
        return sum(term.c * term.rho**k for term in self.tail)

    def coefficient(self, k: int) -> float:
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        if k <= len(self.head):
            return self.head[k - 1]
        return self.tail_value(k)

    @property
    def divergent_at_zero(self) -> bool:
        """True when sum_k c_k / k diverges, i.e. F(0+) = 0."""
        return any(term.rho == 1.0 and term.c > 0.0 for term in self.tail)

    @cached_property
    def corrections(self) -> Tuple[float, ...]:
        # head_k - tail_k, so the full series is the closed-form tail series
        # plus a finite polynomial
        return tuple(c - self.tail_value(k) for k, c in enumerate(self.head, start=1))

    @staticmethod
    def explicit(
        head: Sequence[float],
        tail_kind: TailKind = TailKind.ZERO,
        c: float = 0.0,
        rho: float = 0.0,
        terms: Sequence[GeometricTerm] = (),
    ) -> "CoefficientSource":
        return CoefficientSource(head=tuple(head), tail_kind=tail_kind, tail=_tail_terms(tail_kind, c, rho, terms))

    @staticmethod
    def from_callable(
        func: Callable[[int], float],
        tail_kind: TailKind,
        c: float = 0.0,
        rho: float = 0.0,
        terms: Sequence[GeometricTerm] = (),
        head_length: int = DEFAULT_NUMERICS.theta_cache_size,
    ) -> "CoefficientSource":
        """Materialize k -> c_k for k <= head_length; the declared tail covers the rest."""
        head = tuple(float(func(k)) for k in range(1, head_length + 1))
        return CoefficientSource(
            head=head,
            tail_kind=tail_kind,
            tail=_tail_terms(tail_kind, c, rho, terms),
            kind=CoefficientKind.CALLABLE,
        )


def _tail_terms(tail_kind: TailKind, c: float, rho: float, terms: Sequence[GeometricTerm]) -> Tuple[GeometricTerm, ...]:
    if tail_kind == TailKind.ZERO:
        return ()
    if tail_kind == TailKind.CONSTANT:
        return (GeometricTerm(float(c), 1.0),)
    if tail_kind == TailKind.GEOMETRIC:
        return (GeometricTerm(float(c), float(rho)),)
    return tuple(GeometricTerm(float(t.c), float(t.rho)) for t in terms)


def _check_monotone(source: CoefficientSource) -> None:
    count = len(source.head) + 2
    values = [source.coefficient(k) for k in range(1, count + 1)]
    c1 = values[0]
    if not (c1 > 0.0 and math.isfinite(c1)):
        raise InvalidCoefficients(f"c_1 must lie in (0, inf), got {c1}")
    for k, c in enumerate(values, start=1):
        if not 0.0 <= c <= c1:
            raise InvalidCoefficients(f"c_{k}={c} must lie in [0, c_1={c1}]")
    for k in range(2, count):
        if values[k] > values[k - 1]:
            raise InvalidCoefficients(f"c_k must be non-increasing for k >= 2: c_{k + 1}={values[k]} > c_{k}={values[k - 1]}")


@dataclass(frozen=True)
class LimitLaw:
    type_tag: LawType
    coefficients: Optional[CoefficientSource] = None
    f_zero: Optional[float] = None
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.type_tag == LawType.TYPE_I and self.coefficients is None:
            raise InvalidCoefficients("a Type I law needs a coefficient source")


def _series(source: CoefficientSource, t: float) -> float:
    """sum_k (c_k / k) t^k for t in [0, 1]."""
    if t <= 0.0:
        return 0.0
    total = 0.0
    for term in source.tail:
        if term.c == 0.0 or term.rho == 0.0:
            continue
        z = term.rho * t
        if z >= 1.0:
            return math.inf
        total -= term.c * math.log1p(-z)
    power = 1.0
    for k, delta in enumerate(source.corrections, start=1):
        power *= t
        total += delta * power / k
    return total


def _series_derivative(source: CoefficientSource, t: float) -> float:
    """sum_k c_k t^(k-1) for t in [0, 1]."""
    total = 0.0
    for term in source.tail:
        if term.c == 0.0 or term.rho == 0.0:
            continue
        z = term.rho * t
        if z >= 1.0:
            return math.inf
        total += term.c * term.rho / (1.0 - z)
    power = 1.0
    for delta in source.corrections:
        total += delta * power
        power *= t
    return total


def build_type1(coeffs: CoefficientSource, label: str = "") -> LimitLaw:
    if coeffs.divergent_at_zero:
        f_zero = 0.0
    else:
        f_zero = math.exp(-_series(coeffs, 1.0))
    return LimitLaw(type_tag=LawType.TYPE_I, coefficients=coeffs, f_zero=f_zero, label=label)


def type2(label: str = "type2") -> LimitLaw:
    return LimitLaw(type_tag=LawType.TYPE_II, label=label)


def type3(label: str = "type3") -> LimitLaw:
    return LimitLaw(type_tag=LawType.TYPE_III, label=label)


def _require_type1(law: LimitLaw, what: str) -> CoefficientSource:
    if law.type_tag != LawType.TYPE_I or law.coefficients is None:
        raise LawTypeError(f"{what} is only defined for Type I laws, got Type {law.type_tag.value}")
    return law.coefficients


def f_eval(law: LimitLaw, x: float) -> float:
    source = _require_type1(law, "F")
    if x < 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    if x == 0.0:
        return float(law.f_zero)
    return math.exp(-_series(source, 1.0 - x))


def _density(source: CoefficientSource, x: float) -> float:
    t = 1.0 - x
    value = math.exp(-_series(source, t))
    if value == 0.0:
        return 0.0
    return value * _series_derivative(source, t)


def f_density(law: LimitLaw, x: float) -> float:
    """f = F' on (0, 1]; at x = 1 this is the one-sided derivative c_1."""
    source = _require_type1(law, "f")
    if not 0.0 < x <= 1.0:
        raise DomainError(f"f is defined on (0, 1], got {x}")
    return _density(source, x)


def f_star_eval(law: LimitLaw, y: float, config: NumericsConfig = DEFAULT_NUMERICS) -> float:
    """Generalized inverse F*(y) = inf{x : F(x) > y}."""
    if law.type_tag == LawType.TYPE_II:
        return 1.0 if y >= 1.0 else 0.0
    if law.type_tag == LawType.TYPE_III:
        return 1.0 if y >= 0.0 else 0.0
    if y >= 1.0:
        return 1.0
    if y <= law.f_zero:
        return 0.0
    try:
        root, result = optimize.bisect(
            lambda x: f_eval(law, x) - y,
            0.0,
            1.0,
            # relative stopping: roots near 0 shrink like a power of y - F(0)
            xtol=config.bisection_xtol,
            rtol=config.bisection_rtol,
            maxiter=config.bisection_maxiter,
            full_output=True,
        )
    except RuntimeError as exc:
        raise ConvergenceFailure(f"bisection for F*({y}) did not converge: {exc}") from exc
    logger.debug("F*(%r) bisection iterations=%d", y, result.iterations)
    return float(root)


def f_star_density(law: LimitLaw, y: float, config: NumericsConfig = DEFAULT_NUMERICS) -> float:
    _require_type1(law, "f*")
    if not law.f_zero < y < 1.0:
        raise DomainError(f"f* is defined on ({law.f_zero}, 1), got {y}")
    return 1.0 / f_density(law, f_star_eval(law, y, config))


def planar_density(law: LimitLaw, r: float, config: NumericsConfig = DEFAULT_NUMERICS) -> float:
    """Density of the limiting scaled spectrum at modulus r, f*(r) / (2 pi r)."""
    source = _require_type1(law, "the planar density")
    if r <= 0.0 or r < law.f_zero or r > 1.0:
        return 0.0
    x = f_star_eval(law, r, config) if r < 1.0 else 1.0
    d = _density(source, x)
    if not d > 0.0 or math.isinf(d):
        return 0.0
    return 1.0 / (d * TWO_PI * r)


def radial_quantile(law: LimitLaw, p: float) -> float:
    """Quantile function of the radial law F* at probability p in (0, 1)."""
    if law.type_tag == LawType.TYPE_II:
        return 1.0
    if law.type_tag == LawType.TYPE_III:
        return 0.0
    return f_eval(law, p)


def quantiles(law: LimitLaw, probs: Sequence[float]) -> np.ndarray:
    return np.asarray([radial_quantile(law, float(p)) for p in probs], dtype=np.float64)


# --- presets ---------------------------------------------------------------


def _param(params: Mapping[str, Any], name: str, default: Any = None) -> Any:
    if name in params:
        return params[name]
    if default is None:
        raise BadParameter(f"missing parameter {name!r}")
    return default


def _example1(params: Mapping[str, Any]) -> CoefficientSource:
    return CoefficientSource.explicit((), TailKind.CONSTANT, c=1.0)


def _example2(params: Mapping[str, Any]) -> CoefficientSource:
    alpha = float(_param(params, "alpha"))
    if not alpha >= 1.0:
        raise BadParameter(f"example2 needs alpha >= 1, got {alpha}")
    # c_k = alpha^-k / 2 for all k >= 1
    if alpha == 1.0:
        return CoefficientSource.explicit((), TailKind.CONSTANT, c=0.5)
    return CoefficientSource.explicit((), TailKind.GEOMETRIC, c=0.5, rho=1.0 / alpha)


def _example3a(params: Mapping[str, Any]) -> CoefficientSource:
    return CoefficientSource.explicit((1.0,), TailKind.ZERO)


def _example3b(params: Mapping[str, Any]) -> CoefficientSource:
    gamma = float(_param(params, "gamma"))
    if not gamma >= 0.0:
        raise BadParameter(f"example3b needs gamma >= 0, got {gamma}")
    # -ln F = (1/2) sum (1-x)^k / k + (gamma/2)(1-x)
    return CoefficientSource.explicit(((1.0 + gamma) / 2.0,), TailKind.CONSTANT, c=0.5)


def _fixed_m(params: Mapping[str, Any]) -> CoefficientSource:
    raw = _param(params, "alphas", ())
    alphas = [float(a) for a in (raw if isinstance(raw, (list, tuple)) else [raw])]
    for a in alphas:
        if not 0.0 <= a <= 1.0:
            raise BadParameter(f"fixed_m needs every alpha_j in [0, 1], got {a}")
    # c_k = (1 + sum_j alpha_j^k) / 2
    terms = [GeometricTerm(0.5, 1.0)] + [GeometricTerm(0.5, a) for a in alphas if a > 0.0]
    return CoefficientSource.explicit((), TailKind.MIXTURE, terms=terms)


PRESETS: Dict[str, Callable[[Mapping[str, Any]], CoefficientSource]] = {
    "example1": _example1,
    "example2": _example2,
    "example3a": _example3a,
    "example3b": _example3b,
    "fixed_m": _fixed_m,
}


def preset(name: str, params: Optional[Mapping[str, Any]] = None) -> LimitLaw:
    params = params or {}
    if name == "type2":
        return type2()
    if name == "type3":
        return type3()
    if name not in PRESETS:
        raise UnknownPreset(f"unknown preset {name!r}; expected one of {sorted(PRESETS) + ['type2', 'type3']}")
    label = name
    if params:
        label += "(" + ",".join(f"{k}={v}" for k, v in sorted(params.items())) + ")"
    return build_type1(PRESETS[name](params), label=label)


# --- JSON ------------------------------------------------------------------


def _tail_to_json(source: CoefficientSource) -> Dict[str, Any]:
    if source.tail_kind == TailKind.ZERO:
        return {"kind": "zero"}
    if source.tail_kind == TailKind.CONSTANT:
        return {"kind": "constant", "c": source.tail[0].c}
    if source.tail_kind == TailKind.GEOMETRIC:
        return {"kind": "geometric", "c": source.tail[0].c, "rho": source.tail[0].rho}
    return {"kind": "mixture", "terms": [{"c": t.c, "rho": t.rho} for t in source.tail]}


def to_json(law: LimitLaw) -> Dict[str, Any]:
    data: Dict[str, Any] = {"type": law.type_tag.value}
    if law.coefficients is not None:
        data["coeffs"] = {"head": list(law.coefficients.head), "tail": _tail_to_json(law.coefficients)}
    return data


def from_json(data: Mapping[str, Any]) -> LimitLaw:
    try:
        type_tag = LawType(str(data.get("type", "I")))
    except ValueError as exc:
        raise InvalidCoefficients(f"unknown law type {data.get('type')!r}") from exc
    if type_tag == LawType.TYPE_II:
        return type2()
    if type_tag == LawType.TYPE_III:
        return type3()
    coeffs = data.get("coeffs")
    if not isinstance(coeffs, Mapping):
        raise InvalidCoefficients("Type I law JSON needs a 'coeffs' object")
    tail = coeffs.get("tail", {"kind": "zero"})
    try:
        kind = TailKind(tail.get("kind", "zero"))
    except ValueError as exc:
        raise InvalidCoefficients(f"unknown tail kind {tail.get('kind')!r}") from exc
    terms = [GeometricTerm(float(t["c"]), float(t["rho"])) for t in tail.get("terms", [])]
    source = CoefficientSource.explicit(
        coeffs.get("head", []),
        kind,
        c=float(tail.get("c", 0.0)),
        rho=float(tail.get("rho", 0.0)),
        terms=terms,
    )
    return build_type1(source, label="custom")


# --- classification ---------------------------------------------------------


def classify(
    family: DimensionFamily,
    gamma_rule: GammaRule,
    probe_sizes: Sequence[int],
    config: NumericsConfig = DEFAULT_NUMERICS,
) -> TypeDiagnostics:
    """Heuristic Type I/II/III verdict from r_n = lambda_1(n) / gamma_n at finite probes.

    A limit cannot be certified from finitely many n; the verdict only
    reports the trend and ``heuristic`` is always set.
    """
    sizes = [int(n) for n in probe_sizes]
    if len(sizes) < 4 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise BadParameter(f"probe sizes must be strictly increasing with at least 4 entries, got {sizes}")

    ks = range(1, config.classify_max_k + 1)
    gammas: List[float] = []
    ratios: List[float] = []
    thetas: Dict[int, List[float]] = {k: [] for k in ks}
    last_spec = None
    for n in sizes:
        spec = family.at(n, gamma_rule)
        last_spec = spec
        gammas.append(spec.gamma)
        ratios.append(lambda_k(spec, 1) / spec.gamma)
        for k in ks:
            thetas[k].append(theta_k(spec, k))
    logger.debug("classify ratios lambda_1/gamma over %s: %s", sizes, ratios)

    decreasing = all(b < a for a, b in zip(ratios, ratios[1:]))
    increasing = all(b > a for a, b in zip(ratios, ratios[1:]))
    last, previous = ratios[-1], ratios[-2]
    c_hat: List[float] = []
    if last < config.classify_zero_threshold and decreasing:
        verdict = Verdict.TYPE_II
    elif last > config.classify_infinity_threshold and increasing:
        verdict = Verdict.TYPE_III
    elif (
        config.classify_zero_threshold <= last <= config.classify_infinity_threshold
        and abs(last - previous) <= config.classify_stability * abs(previous)
    ):
        verdict = Verdict.TYPE_I
        c_hat = c_estimates(last_spec, ks)
    else:
        verdict = Verdict.INCONCLUSIVE
    return TypeDiagnostics(
        probe_sizes=sizes,
        gammas=gammas,
        c1_estimates=ratios,
        theta_trends=thetas,
        verdict=verdict,
        c_estimates=c_hat,
        heuristic=True,
    )


def diagnostics_to_json(diag: TypeDiagnostics) -> Dict[str, Any]:
    return {
        "verdict": diag.verdict.value,
        "heuristic": diag.heuristic,
        "probe_sizes": diag.probe_sizes,
        "gammas": diag.gammas,
        "c1_estimates": diag.c1_estimates,
        "theta_trends": {str(k): v for k, v in diag.theta_trends.items()},
        "c_estimates": diag.c_estimates,
    }

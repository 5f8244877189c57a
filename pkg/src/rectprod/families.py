from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Mapping, Optional

from .chain_spec import ChainSpec, lambda_k
from .errors import BadParameter, UnknownFamily

GammaRule = Callable[[ChainSpec], float]

GAMMA_RULES: Dict[str, GammaRule] = {
    "m": lambda spec: float(spec.m),
    "2m": lambda spec: 2.0 * spec.m,
    "m2": lambda spec: float(spec.m) ** 2,
    "one": lambda spec: 1.0,
    "two": lambda spec: 2.0,
    "lambda1": lambda spec: lambda_k(spec, 1),
}


def gamma_rule(name: str) -> GammaRule:
    if name in GAMMA_RULES:
        return GAMMA_RULES[name]
    try:
        value = float(name)
    except ValueError as exc:
        raise BadParameter(f"unknown gamma rule {name!r}; expected one of {sorted(GAMMA_RULES)} or a number") from exc
    if not value > 0:
        raise BadParameter(f"gamma must be positive, got {value}")
    return lambda spec: value


@dataclass(frozen=True)
class DimensionFamily:
    """Indexed family n -> ChainSpec for asymptotic diagnostics.

    ``generator`` returns n_1..n_{m+1}; gamma is attached by a gamma rule.
    """

    generator: Callable[[int], List[int]]
    description: str
    default_gamma: str = "m"

    def at(self, n: int, rule: Optional[GammaRule] = None) -> ChainSpec:
        dims = self.generator(n)
        spec = ChainSpec(n=n, m=len(dims) - 1, dims=tuple(dims), gamma=1.0)
        rule = rule or gamma_rule(self.default_gamma)
        return replace(spec, gamma=rule(spec))


def m_rule(value: Any) -> Callable[[int], int]:
    """Chain length as a function of n: "n", "sqrt", "const:<k>" or an integer."""
    text = str(value)
    if text == "n":
        return lambda n: n
    if text == "sqrt":
        return lambda n: max(1, math.ceil(math.sqrt(n)))
    if text.startswith("const:"):
        text = text.split(":", 1)[1]
    try:
        k = int(float(text))
    except ValueError as exc:
        raise BadParameter(f"unknown m rule {value!r}") from exc
    if k < 1:
        raise BadParameter(f"chain length must be >= 1, got {k}")
    return lambda n: k


def _square(params: Mapping[str, Any]) -> DimensionFamily:
    m_of = m_rule(params.get("m", "n"))
    return DimensionFamily(
        generator=lambda n: [n] * (m_of(n) + 1),
        description=f"square chain, m_n={params.get('m', 'n')}",
        default_gamma="m",
    )


def _alpha_chain(n: int, m: int, inner: int) -> List[int]:
    if m == 1:
        return [n, n]
    return [n] + [inner] * (m - 1) + [n]


def _example2(params: Mapping[str, Any]) -> DimensionFamily:
    alpha = float(params.get("alpha", 2.0))
    if not alpha >= 1.0:
        raise BadParameter(f"example2 family needs alpha >= 1, got {alpha}")
    m_of = m_rule(params.get("m", "n"))
    return DimensionFamily(
        generator=lambda n: _alpha_chain(n, m_of(n), round(alpha * n)),
        description=f"n_2..n_m = round({alpha} n), m_n={params.get('m', 'n')}",
        default_gamma="2m",
    )


def _example3a(params: Mapping[str, Any]) -> DimensionFamily:
    # alpha_n = sqrt(n), m_n = n, so m_n / alpha_n -> infinity
    return DimensionFamily(
        generator=lambda n: _alpha_chain(n, n, n * max(1, math.ceil(math.sqrt(n)))),
        description="n_2..n_m = n ceil(sqrt n), m_n = n",
        default_gamma="lambda1",
    )


def _example3b(params: Mapping[str, Any]) -> DimensionFamily:
    gamma = float(params.get("gamma", 1.0))
    if not gamma >= 0.0:
        raise BadParameter(f"example3b family needs gamma >= 0, got {gamma}")

    # alpha_n = n and m_n / alpha_n -> gamma
    def dims(n: int) -> List[int]:
        m = max(2, round(gamma * n) + math.ceil(math.sqrt(n)))
        return _alpha_chain(n, m, n * n)

    return DimensionFamily(generator=dims, description=f"n_2..n_m = n^2, m_n ~ {gamma} n", default_gamma="two")


def _fixed_m(params: Mapping[str, Any]) -> DimensionFamily:
    raw = params.get("alphas", ())
    alphas = [float(a) for a in (raw if isinstance(raw, (list, tuple)) else [raw])]
    for a in alphas:
        if not 0.0 <= a <= 1.0:
            raise BadParameter(f"fixed_m family needs alpha_j in [0, 1], got {a}")

    def dims(n: int) -> List[int]:
        inner = [n * n if a == 0.0 else max(n, round(n / a)) for a in alphas]
        return [n] + inner + [n]

    return DimensionFamily(generator=dims, description=f"fixed m={len(alphas) + 1}, n/n_j -> {alphas}", default_gamma="two")


FAMILIES: Dict[str, Callable[[Mapping[str, Any]], DimensionFamily]] = {
    "square": _square,
    "example2": _example2,
    "example3a": _example3a,
    "example3b": _example3b,
    "fixed_m": _fixed_m,
}


def family(name: str, params: Optional[Mapping[str, Any]] = None) -> DimensionFamily:
    if name not in FAMILIES:
        raise UnknownFamily(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}")
    return FAMILIES[name](params or {})

from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .. import chain_spec, limit_law
from ..chain_spec import ChainSpec
from ..config import DEFAULT_NUMERICS
from ..errors import BadParameter
from ..families import family, gamma_rule
from ..limit_law import LimitLaw
from ..sampler import SEED_MAX


class ExplicitChain(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    m: int
    dims: List[Union[int, List[int]]]
    gamma: float


class FamilyChain(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: str
    n: int = Field(ge=1)
    params: Dict[str, Any] = Field(default_factory=dict)
    gamma_rule: Optional[str] = None


class LawPreset(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)


class ExplicitLaw(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["I", "II", "III"] = "I"
    coeffs: Optional[Dict[str, Any]] = None


class RunConfig(BaseModel):
    """The single JSON document describing a run; CLI flags are merged on top."""

    model_config = ConfigDict(extra="forbid")

    chain: Optional[Union[ExplicitChain, FamilyChain]] = None
    law: Optional[Union[LawPreset, ExplicitLaw]] = None
    family: Optional[FamilyChain] = None
    seed: int = Field(default=0, ge=0, le=SEED_MAX)
    trials: int = Field(default=1, ge=1)
    jobs: int = Field(default=1, ge=1)
    out: Optional[str] = None
    x_grid: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    grid_points: int = Field(default=101, ge=2)
    probes: List[int] = Field(default_factory=lambda: [250, 500, 1000, 2000])
    replicates: int = Field(default=1000, ge=100)
    scaling: Literal["nonlinear", "linear"] = "nonlinear"
    ring_slack: float = Field(default=DEFAULT_NUMERICS.ring_slack, ge=0.0)
    eigen_radii: Optional[str] = None
    oracle_radii: Optional[str] = None

    @field_validator("x_grid")
    @classmethod
    def _x_in_unit_interval(cls, value: List[float]) -> List[float]:
        for x in value:
            if not 0.0 < x <= 1.0:
                raise ValueError(f"x grid values must lie in (0, 1], got {x}")
        return value

    def resolve_chain(self) -> ChainSpec:
        if self.chain is None:
            raise BadParameter("this subcommand needs a chain (explicit dims or a family)")
        if isinstance(self.chain, ExplicitChain):
            return chain_spec.from_json(self.chain.model_dump())
        fam = family(self.chain.family, self.chain.params)
        rule = gamma_rule(self.chain.gamma_rule) if self.chain.gamma_rule else None
        return fam.at(self.chain.n, rule)

    def resolve_law(self) -> Optional[LimitLaw]:
        if self.law is None:
            return None
        if isinstance(self.law, LawPreset):
            return limit_law.preset(self.law.name, self.law.params)
        return limit_law.from_json(self.law.model_dump(exclude_none=True))

    def run_id(self, command: str) -> str:
        payload = self.model_dump(mode="json", exclude={"jobs", "out"})
        digest = hashlib.sha1(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()
        return f"{command}-{digest[:10]}"

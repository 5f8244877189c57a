from __future__ import annotations

from dataclasses import asdict
from typing import Dict, Iterable, List, Sequence

import numpy as np

from .errors import DomainError
from .export import format_float
from .limit_law import (
    LimitLaw,
    f_density,
    f_eval,
    f_star_density,
    f_star_eval,
    planar_density,
    to_json,
)
from .models import (
    GofReport,
    LawType,
    OracleSample,
    PlanarSample,
    RadialSample,
    SpectralSample,
    TnLimitSummary,
)


def scatter_rows(trial: int, spectrum: SpectralSample, planar: PlanarSample) -> List[Dict[str, str]]:
    xs, ys = planar.cartesian()
    rows: List[Dict[str, str]] = []
    for i in range(len(planar)):
        rows.append(
            {
                "trial": str(trial),
                "index": str(i),
                "log_modulus": format_float(spectrum.log_modulus[i]),
                "angle": format_float(planar.angles[i]),
                "radius": format_float(planar.radii[i]),
                "x": format_float(xs[i]),
                "y": format_float(ys[i]),
            }
        )
    return rows


def radii_rows(radial: RadialSample, angles: Sequence[float] = ()) -> List[Dict[str, str]]:
    rows: List[Dict[str, str]] = []
    for i, r in enumerate(radial.radii):
        rows.append(
            {
                "radius": format_float(r),
                "angle": format_float(angles[i]) if len(angles) else "",
                "source": radial.source.value,
            }
        )
    return rows


def oracle_rows(trial: int, sample: OracleSample) -> List[Dict[str, str]]:
    return [
        {"trial": str(trial), "index": str(j), "log_t": format_float(v)}
        for j, v in enumerate(sample.log_t, start=1)
    ]


def residual_rows(log_t: np.ndarray, expected: Sequence[float]) -> List[Dict[str, str]]:
    """log_t has one row per replicate and one column per j."""
    trials = log_t.shape[0]
    means = log_t.mean(axis=0)
    errors = log_t.std(axis=0, ddof=1) / np.sqrt(trials) if trials > 1 else np.full(log_t.shape[1], np.nan)
    rows: List[Dict[str, str]] = []
    for j, (mean, exp, err) in enumerate(zip(means, expected, errors), start=1):
        rows.append(
            {
                "j": str(j),
                "mean_log_t": format_float(mean),
                "expected_log_t": format_float(exp),
                "residual": format_float(mean - exp),
                "std_error": format_float(err),
            }
        )
    return rows


def tnlimit_rows(summaries: Iterable[TnLimitSummary]) -> List[Dict[str, str]]:
    return [
        {
            "x": format_float(s.x),
            "j": str(s.j),
            "mean": format_float(s.mean),
            "std": format_float(s.std),
            "replicates": str(s.replicates),
        }
        for s in summaries
    ]


def _optional(func, *args) -> str:
    try:
        return format_float(func(*args))
    except DomainError:
        return ""


def limit_rows(law: LimitLaw, grid: Sequence[float]) -> List[Dict[str, str]]:
    """F, F*, f, f*, and the planar density over ``grid`` (Type I laws)."""
    rows: List[Dict[str, str]] = []
    for x in grid:
        x = float(x)
        if law.type_tag == LawType.TYPE_I:
            row = {
                "x": format_float(x),
                "F": format_float(f_eval(law, x)),
                "F_star": format_float(f_star_eval(law, x)),
                "f": _optional(f_density, law, x),
                "f_star": _optional(f_star_density, law, x),
                "planar_density": format_float(planar_density(law, x)) if x > 0 else "",
            }
        else:
            row = {"x": format_float(x), "F_star": format_float(f_star_eval(law, x))}
        rows.append(row)
    return rows


def law_summary(law: LimitLaw) -> Dict[str, object]:
    return {"type": law.type_tag.value, "f_zero": law.f_zero, "label": law.label, "law": to_json(law)}


def gof_to_json(report: GofReport) -> Dict[str, object]:
    return asdict(report)

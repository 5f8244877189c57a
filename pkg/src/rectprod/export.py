from __future__ import annotations

import csv
import json
import math
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .models import RadialSample, SampleSource


def format_float(value: Optional[float]) -> str:
    """Shortest round-trip text for a float; '' for a missing value."""
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


def write_csv(path: str, rows: Iterable[Dict[str, str]], headers: Sequence[str]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(headers), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in headers})


def read_csv(path: str) -> List[Dict[str, str]]:
    with open(path, "r", newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def write_json(path: str, data: Any) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(json.dumps(data, ensure_ascii=True, indent=2, sort_keys=True))
        handle.write("\n")


def read_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def load_radial_sample(path: str, source: Optional[SampleSource] = None) -> RadialSample:
    """Radii from a radii CSV, optionally filtered by source."""
    rows = read_csv(path)
    if source is not None:
        rows = [r for r in rows if r.get("source") == source.value]
    tag = source or (SampleSource(rows[0]["source"]) if rows else SampleSource.EIGEN)
    radii = np.asarray([float(r["radius"]) for r in rows], dtype=np.float64)
    return RadialSample(radii=radii, source=tag)


def load_angles(path: str) -> np.ndarray:
    return np.asarray([float(r["angle"]) for r in read_csv(path) if r.get("angle")], dtype=np.float64)

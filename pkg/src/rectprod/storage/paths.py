from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

OUT_ENV = "RECTPROD_OUT"
DEFAULT_OUT = "runs"


def output_root(cli_out: Optional[str] = None) -> Path:
    """RECTPROD_OUT wins over --out, which wins over the default."""
    base = os.environ.get(OUT_ENV)
    if base:
        return Path(base)
    return Path(cli_out or DEFAULT_OUT)


def run_dir(root: Path, run_id: str) -> Path:
    path = root / run_id
    path.mkdir(parents=True, exist_ok=True)
    return path

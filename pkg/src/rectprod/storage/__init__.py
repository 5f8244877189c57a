from .paths import OUT_ENV, output_root, run_dir

__all__ = [
    "OUT_ENV",
    "output_root",
    "run_dir",
]

from __future__ import annotations


SCATTER_CSV_HEADERS = [
    "trial",
    "index",
    "log_modulus",
    "angle",
    "radius",
    "x",
    "y",
]

RADII_CSV_HEADERS = [
    "radius",
    "angle",
    "source",
]

ORACLE_CSV_HEADERS = [
    "trial",
    "index",
    "log_t",
]

RESIDUAL_CSV_HEADERS = [
    "j",
    "mean_log_t",
    "expected_log_t",
    "residual",
    "std_error",
]

TNLIMIT_CSV_HEADERS = [
    "x",
    "j",
    "mean",
    "std",
    "replicates",
]

LIMIT_CSV_HEADERS = [
    "x",
    "F",
    "F_star",
    "f",
    "f_star",
    "planar_density",
]

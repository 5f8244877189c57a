from .config import NumericsConfig
from .chain_spec import ChainSpec, f_n_eval, g_n_eval, lambda_k, log_a_n, theta_k, validate
from .eigen import eigenvalues, spectral_invariant_check
from .empirics import (
    angle_uniformity,
    ecdf,
    gof_report,
    h_transform,
    ks_one_sample,
    ks_two_sample,
    ring_coverage,
    tnlimit_diagnostic,
    wasserstein1,
)
from .families import DimensionFamily, family
from .limit_law import (
    CoefficientSource,
    LimitLaw,
    build_type1,
    classify,
    f_density,
    f_eval,
    f_star_density,
    f_star_eval,
    planar_density,
    preset,
)
from .models import (
    GofReport,
    LawType,
    OracleSample,
    PlanarSample,
    RadialSample,
    SampleSource,
    ScaledProduct,
    SpectralSample,
    TailKind,
    TypeDiagnostics,
    Verdict,
)
from .sampler import expected_log_t, make_rng, product_chain, sample_ginibre, sample_oracle

__all__ = [
    "ChainSpec",
    "CoefficientSource",
    "DimensionFamily",
    "GofReport",
    "LawType",
    "LimitLaw",
    "NumericsConfig",
    "OracleSample",
    "PlanarSample",
    "RadialSample",
    "SampleSource",
    "ScaledProduct",
    "SpectralSample",
    "TailKind",
    "TypeDiagnostics",
    "Verdict",
    "angle_uniformity",
    "build_type1",
    "classify",
    "ecdf",
    "eigenvalues",
    "expected_log_t",
    "f_density",
    "f_eval",
    "f_n_eval",
    "f_star_density",
    "f_star_eval",
    "family",
    "g_n_eval",
    "gof_report",
    "h_transform",
    "ks_one_sample",
    "ks_two_sample",
    "lambda_k",
    "log_a_n",
    "make_rng",
    "planar_density",
    "preset",
    "product_chain",
    "ring_coverage",
    "sample_ginibre",
    "sample_oracle",
    "spectral_invariant_check",
    "theta_k",
    "tnlimit_diagnostic",
    "validate",
    "wasserstein1",
]

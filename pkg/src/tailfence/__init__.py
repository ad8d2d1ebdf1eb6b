"""Outlier-fence tail characteristics, tail-index estimators, and Monte Carlo studies."""

from .distributions import DistributionSpec, RngState, cdf, parse_spec, quantile, sample
from .empirical import (
    Sample,
    empirical_fences,
    empirical_p_eL,
    empirical_p_eR,
    empirical_p_mL,
    empirical_p_mR,
    empirical_quantile,
    empirical_quantile_flagged,
    load_sample,
    outlier_band_counts,
)
from .estimators import (
    ALL_METHODS,
    CLASSICAL_METHODS,
    NEW_METHODS,
    EstimateRecord,
    estimate_fence_prob,
    estimate_quartile_ratio,
    evaluate,
    hill,
    moment_dedh,
    pickands,
    t_hill,
)
from .fences import Fences, fences_from_quartiles
from .montecarlo import (
    StudyConfig,
    StudyResult,
    StudyRow,
    run_study,
    summarize_ci,
    write_study_outputs,
)
from .tail_chars import (
    TailCharacteristics,
    characteristics,
    closed_form_p_eL,
    closed_form_p_eR,
    fences,
    frechet_left_tail_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_METHODS",
    "CLASSICAL_METHODS",
    "NEW_METHODS",
    "DistributionSpec",
    "EstimateRecord",
    "Fences",
    "RngState",
    "Sample",
    "StudyConfig",
    "StudyResult",
    "StudyRow",
    "TailCharacteristics",
    "cdf",
    "characteristics",
    "closed_form_p_eL",
    "closed_form_p_eR",
    "empirical_fences",
    "empirical_p_eL",
    "empirical_p_eR",
    "empirical_p_mL",
    "empirical_p_mR",
    "empirical_quantile",
    "empirical_quantile_flagged",
    "estimate_fence_prob",
    "estimate_quartile_ratio",
    "evaluate",
    "fences",
    "fences_from_quartiles",
    "frechet_left_tail_threshold",
    "hill",
    "load_sample",
    "moment_dedh",
    "outlier_band_counts",
    "parse_spec",
    "pickands",
    "quantile",
    "run_study",
    "sample",
    "summarize_ci",
    "t_hill",
    "write_study_outputs",
    "__version__",
]

"""Sequential outlier identification for Gaussian mixture clustering."""

from ._outliermbc import (
    __version__,
    adjusted_rand_index,
    beta_cdf,
    chisq_quantile,
    detect_gross,
    fit,
    knn_distance,
    mahalanobis_sq,
    outlier_f1,
    simulate_illustrative,
    simulate_tclust,
)

__all__ = [
    "__version__",
    "adjusted_rand_index",
    "beta_cdf",
    "chisq_quantile",
    "detect_gross",
    "fit",
    "knn_distance",
    "mahalanobis_sq",
    "outlier_f1",
    "simulate_illustrative",
    "simulate_tclust",
]

"""Finite sections and essential spectra of Toeplitz, composition and Fourier multiplier operators."""

from ._core import (
    ArgumentError,
    ConfigurationError,
    HardyError,
    NotFredholmError,
    NumericalError,
    StructuralError,
    choose_alpha,
    cluster_set,
    compactness_verdict,
    evaluate,
    finite_section_eigenvalues,
    fourier_coefficient,
    gelfand_evaluate,
    hausdorff_distance,
    identity_residual,
    one_sided_limits,
    run_cli,
    series_residuals,
    singular_values,
    spectrum_general,
    spectrum_product,
    spectrum_sum,
    winding_index,
)

__all__ = [
    "ArgumentError",
    "ConfigurationError",
    "HardyError",
    "NotFredholmError",
    "NumericalError",
    "StructuralError",
    "choose_alpha",
    "cluster_set",
    "compactness_verdict",
    "evaluate",
    "finite_section_eigenvalues",
    "fourier_coefficient",
    "gelfand_evaluate",
    "hausdorff_distance",
    "identity_residual",
    "one_sided_limits",
    "run_cli",
    "series_residuals",
    "singular_values",
    "spectrum_general",
    "spectrum_product",
    "spectrum_sum",
    "winding_index",
]

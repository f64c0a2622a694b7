"""Fluorescence, spectra, photon statistics and squeezing of a driven
quantum-well microcavity whose field mode is damped into a squeezed
vacuum reservoir.

Closed forms live in :mod:`qwfluor.observables` (built on
:mod:`qwfluor.envelopes`), the exact numerical references in
:mod:`qwfluor.oracle`, and the comparison machinery in
:mod:`qwfluor.verify`.  A FastAPI service (:mod:`qwfluor.service`) and a
CLI (:mod:`qwfluor.cli`) expose the same calculations.
"""

from .envelopes import (
    EnvelopeSet,
    G2Coeffs,
    IntensityCoeffs,
    envelopes,
    g2_coeffs,
    intensity_coeffs,
    variance_coeff_lambda4,
)
from .observables import (
    DressedManifold,
    SourceToggle,
    SpectrumPeaks,
    SpectrumResult,
    ZeroIntensityError,
    correlation_bb,
    dressed_manifold,
    g2,
    intensity,
    intensity_ss,
    quad_variance,
    quad_variance_ss,
    resonant_squeezing_ss,
    spectrum,
    spectrum_peaks,
)
from .params import (
    DerivedParams,
    ParameterError,
    SystemParams,
    ValidationReport,
    derive,
    mu_squared,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SystemParams",
    "DerivedParams",
    "ValidationReport",
    "ParameterError",
    "validate",
    "derive",
    "mu_squared",
    "EnvelopeSet",
    "IntensityCoeffs",
    "G2Coeffs",
    "envelopes",
    "intensity_coeffs",
    "g2_coeffs",
    "variance_coeff_lambda4",
    "SourceToggle",
    "SpectrumResult",
    "SpectrumPeaks",
    "DressedManifold",
    "ZeroIntensityError",
    "intensity",
    "intensity_ss",
    "correlation_bb",
    "spectrum",
    "spectrum_peaks",
    "g2",
    "quad_variance",
    "quad_variance_ss",
    "resonant_squeezing_ss",
    "dressed_manifold",
]

"""Spectrum-control strategies, regularizers and singular-value updates."""

from spectrumgan.spectrum.clipping import project_clip
from spectrumgan.spectrum.model import (
    ControllerTag,
    PowerVectors,
    SpectrumController,
    build_controller,
    default_gamma,
)
from spectrumgan.spectrum.reference import (
    ReferenceSpectrum,
    reference_density,
    sample_reference_spectrum,
)
from spectrumgan.spectrum.regularizers import (
    RegularizerResult,
    divergence_reg,
    dopt_reg,
    lipschitz_reg,
    regularizer_dispatch,
)
from spectrumgan.spectrum.update import (
    diagonal_vjp,
    effective_diagonal,
    power_vectors,
    project_onto_constraint,
    singular_value_update,
)

__all__ = [
    "ControllerTag",
    "PowerVectors",
    "ReferenceSpectrum",
    "RegularizerResult",
    "SpectrumController",
    "build_controller",
    "default_gamma",
    "diagonal_vjp",
    "divergence_reg",
    "dopt_reg",
    "effective_diagonal",
    "lipschitz_reg",
    "power_vectors",
    "project_clip",
    "project_onto_constraint",
    "reference_density",
    "regularizer_dispatch",
    "sample_reference_spectrum",
    "singular_value_update",
]

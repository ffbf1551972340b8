"""Toy data, decay and coverage diagnostics, and the bound calculator."""

from spectrumgan.evalsuite.bounds import (
    GenBoundInput,
    excess_gen_bound,
    log_covering_number,
)
from spectrumgan.evalsuite.coverage import mode_coverage
from spectrumgan.evalsuite.datasets import RingSpec, ring_centers, sample_ring
from spectrumgan.evalsuite.fidelity import (
    FIDELITY_FIELDS,
    LayerFidelity,
    fidelity_report,
)
from spectrumgan.evalsuite.metrics import METRIC_FIELDS, MetricRow
from spectrumgan.evalsuite.lipschitz import (
    LipschitzProbe,
    lipschitz_probe,
    product_bound,
)
from spectrumgan.evalsuite.spectra import (
    LayerSpectrum,
    SpectrumReport,
    layer_spectrum,
    spectrum_report,
)

__all__ = [
    "FIDELITY_FIELDS",
    "GenBoundInput",
    "LayerFidelity",
    "LayerSpectrum",
    "LipschitzProbe",
    "METRIC_FIELDS",
    "MetricRow",
    "RingSpec",
    "SpectrumReport",
    "excess_gen_bound",
    "fidelity_report",
    "layer_spectrum",
    "lipschitz_probe",
    "log_covering_number",
    "mode_coverage",
    "product_bound",
    "ring_centers",
    "sample_ring",
    "spectrum_report",
]

"""Singular-value decay snapshots of a discriminator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from spectrumgan.linalg import Vec
from spectrumgan.spectrum import SpectrumController, effective_diagonal
from spectrumgan.svdnet import DiscNet


@dataclass(frozen=True)
class LayerSpectrum:
    values: Vec
    normalized_ranks: Vec

    @property
    def rank(self) -> int:
        return int(self.values.shape[0])

    @property
    def decay_area(self) -> float:
        """Mean value over max value: 1 means no decay."""
        top = float(self.values[0])
        if top <= 0:
            return 0.0
        return float(np.mean(self.values)) / top


@dataclass(frozen=True)
class SpectrumReport:
    iteration: int
    layers: tuple[LayerSpectrum, ...]

    @property
    def decay_areas(self) -> list[float]:
        return [layer.decay_area for layer in self.layers]

    @property
    def mean_decay_area(self) -> float:
        return float(np.mean(self.decay_areas))


def layer_spectrum(values: Vec) -> LayerSpectrum:
    ordered = np.sort(np.abs(np.asarray(values, dtype=np.float64)))[::-1]
    rank = ordered.shape[0]
    ranks = np.arange(1, rank + 1, dtype=np.float64) / rank
    return LayerSpectrum(values=ordered.copy(), normalized_ranks=ranks)


def spectrum_report(
    net: DiscNet, controller: SpectrumController, iteration: int
) -> SpectrumReport:
    """Effective singular values ``|e'|`` per layer, largest first."""
    return SpectrumReport(
        iteration=iteration,
        layers=tuple(
            layer_spectrum(effective_diagonal(layer, controller, index))
            for index, layer in enumerate(net.layers)
        ),
    )

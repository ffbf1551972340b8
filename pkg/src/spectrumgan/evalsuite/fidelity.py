"""How closely the parameterized diagonal matches the realized spectrum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from spectrumgan.linalg import Vec, jacobi_svd
from spectrumgan.spectrum import SpectrumController, effective_diagonal
from spectrumgan.svdnet import DiscNet, effective_weight, orth_penalties

FIDELITY_FIELDS = (
    "layer",
    "max_e",
    "max_s",
    "min_e",
    "min_s",
    "mean_e",
    "mean_s",
    "var_e",
    "var_s",
    "orth_u",
    "orth_v",
)


@dataclass(frozen=True)
class LayerFidelity:
    layer: int
    parameterized: Vec
    realized: Vec
    orth_u: float
    orth_v: float

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.parameterized - self.realized)))

    def as_row(self) -> dict[str, float | int]:
        e, s = self.parameterized, self.realized
        return {
            "layer": self.layer,
            "max_e": float(e.max()),
            "max_s": float(s.max()),
            "min_e": float(e.min()),
            "min_s": float(s.min()),
            "mean_e": float(e.mean()),
            "mean_s": float(s.mean()),
            "var_e": float(e.var()),
            "var_s": float(s.var()),
            "orth_u": self.orth_u,
            "orth_v": self.orth_v,
        }


def fidelity_report(
    net: DiscNet, controller: SpectrumController
) -> list[LayerFidelity]:
    """Sorted ``|e'|`` against Jacobi singular values of each layer."""
    report = []
    for index, layer in enumerate(net.layers):
        parameterized = np.sort(
            np.abs(effective_diagonal(layer, controller, index))
        )[::-1]
        _, realized, _ = jacobi_svd(effective_weight(layer, controller, index))
        orth_u, orth_v = orth_penalties(layer)
        report.append(
            LayerFidelity(
                layer=index,
                parameterized=parameterized.copy(),
                realized=realized[: layer.rank].copy(),
                orth_u=orth_u,
                orth_v=orth_v,
            )
        )
    return report

"""Domain model for SVD-reparameterized discriminators and generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from spectrumgan.linalg import Mat, Vec
from spectrumgan.spectrum import SpectrumController

LEAKY_SLOPE = 0.1


@dataclass(eq=False)
class SvdLayer:
    """One layer ``W = U diag(e) V^T`` of shape ``d_in x d_out``."""

    u: Mat
    e: Vec
    v: Mat
    bias: Vec
    cached_input: Mat | None = field(default=None, repr=False)

    @property
    def d_in(self) -> int:
        return int(self.u.shape[0])

    @property
    def d_out(self) -> int:
        return int(self.v.shape[0])

    @property
    def rank(self) -> int:
        return int(self.e.shape[0])


@dataclass(eq=False)
class DiscNet:
    layers: list[SvdLayer]
    slope: float = LEAKY_SLOPE
    pre_activations: list[Mat] = field(default_factory=list, repr=False)

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def dims(self) -> list[int]:
        return [self.layers[0].d_in] + [layer.d_out for layer in self.layers]


@dataclass(eq=False)
class DenseLayer:
    weight: Mat
    bias: Vec
    cached_input: Mat | None = field(default=None, repr=False)

    @property
    def d_in(self) -> int:
        return int(self.weight.shape[0])

    @property
    def d_out(self) -> int:
        return int(self.weight.shape[1])


@dataclass(eq=False)
class GenNet:
    layers: list[DenseLayer]
    slope: float = LEAKY_SLOPE
    pre_activations: list[Mat] = field(default_factory=list, repr=False)

    @property
    def z_dim(self) -> int:
        return self.layers[0].d_in

    @property
    def dims(self) -> list[int]:
        return [self.layers[0].d_in] + [layer.d_out for layer in self.layers]


@dataclass(frozen=True)
class LayerGradients:
    h: Mat
    u: Mat
    v: Mat
    e: Vec
    bias: Vec

    def scaled(self, factor: float) -> LayerGradients:
        return LayerGradients(
            h=self.h * factor,
            u=self.u * factor,
            v=self.v * factor,
            e=self.e * factor,
            bias=self.bias * factor,
        )


@dataclass(frozen=True)
class DiscGradients:
    layers: tuple[LayerGradients, ...]

    @property
    def inputs(self) -> Mat:
        return self.layers[0].h


@dataclass(frozen=True)
class DenseGradients:
    weight: Mat
    bias: Vec


@dataclass(frozen=True)
class GenGradients:
    layers: tuple[DenseGradients, ...]
    inputs: Mat


def disc_parameters(net: DiscNet) -> dict[str, np.ndarray]:
    params: dict[str, np.ndarray] = {}
    for index, layer in enumerate(net.layers):
        params[f"layer{index}.u"] = layer.u
        params[f"layer{index}.e"] = layer.e
        params[f"layer{index}.v"] = layer.v
        params[f"layer{index}.bias"] = layer.bias
    return params


def disc_gradient_arrays(grads: DiscGradients) -> dict[str, np.ndarray]:
    arrays: dict[str, np.ndarray] = {}
    for index, layer in enumerate(grads.layers):
        arrays[f"layer{index}.u"] = layer.u
        arrays[f"layer{index}.e"] = layer.e
        arrays[f"layer{index}.v"] = layer.v
        arrays[f"layer{index}.bias"] = layer.bias
    return arrays


def gen_parameters(net: GenNet) -> dict[str, np.ndarray]:
    params: dict[str, np.ndarray] = {}
    for index, layer in enumerate(net.layers):
        params[f"layer{index}.weight"] = layer.weight
        params[f"layer{index}.bias"] = layer.bias
    return params


def gen_gradient_arrays(grads: GenGradients) -> dict[str, np.ndarray]:
    arrays: dict[str, np.ndarray] = {}
    for index, layer in enumerate(grads.layers):
        arrays[f"layer{index}.weight"] = layer.weight
        arrays[f"layer{index}.bias"] = layer.bias
    return arrays


@dataclass(eq=False)
class Checkpoint:
    """Everything needed to rebuild a run's networks at one iteration."""

    disc: DiscNet
    controller: SpectrumController
    iteration: int = 0
    seed: int = 0
    gen: GenNet | None = None
    rng_states: dict[str, dict] = field(default_factory=dict)

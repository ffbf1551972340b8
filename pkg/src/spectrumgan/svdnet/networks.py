"""Fixed-topology discriminator and generator networks."""

from __future__ import annotations

import numpy as np

from spectrumgan.errors import RejectedInputError, StateError
from spectrumgan.linalg import Mat, Vec, make_rng, qr_orthonormalize
from spectrumgan.linalg.rng import STREAM_GEN_INIT
from spectrumgan.spectrum import (
    SpectrumController,
    project_onto_constraint,
    singular_value_update,
)
from spectrumgan.svdnet.layers import (
    layer_backward,
    layer_forward,
    orth_penalties,
)
from spectrumgan.svdnet.model import (
    DenseGradients,
    DenseLayer,
    DiscGradients,
    DiscNet,
    GenGradients,
    GenNet,
    LayerGradients,
)


def leaky_relu(x: Mat, slope: float) -> Mat:
    return np.where(x > 0, x, slope * x)


def leaky_relu_grad(x: Mat, slope: float) -> Mat:
    return np.where(x > 0, 1.0, slope)


def apply_singular_value_update(
    net: DiscNet, controller: SpectrumController
) -> None:
    for index, layer in enumerate(net.layers):
        singular_value_update(layer, controller, index)


def project_disc(net: DiscNet, controller: SpectrumController) -> None:
    for layer in net.layers:
        project_onto_constraint(layer, controller)


def reorthonormalize(net: DiscNet) -> None:
    """Replace every ``U, V`` by its QR orthonormal factor in place."""
    for layer in net.layers:
        layer.u[...] = qr_orthonormalize(layer.u)
        layer.v[...] = qr_orthonormalize(layer.v)


def max_orth_penalty(net: DiscNet) -> float:
    return max(max(orth_penalties(layer)) for layer in net.layers)


def disc_forward(
    net: DiscNet, x: Mat, controller: SpectrumController
) -> Vec:
    """Logits of a batch; caches inputs and pre-activations for backward."""
    net.pre_activations = []
    h = x
    last = net.depth - 1
    for index, layer in enumerate(net.layers):
        s = layer_forward(layer, h, controller, index)
        net.pre_activations.append(s)
        h = leaky_relu(s, net.slope) if index < last else s
    return h[:, 0].copy()


def disc_backward(
    net: DiscNet, grad_logits: Vec, controller: SpectrumController
) -> DiscGradients:
    if len(net.pre_activations) != net.depth:
        raise StateError("disc_backward called before disc_forward")
    batch = net.pre_activations[-1].shape[0]
    if grad_logits.shape != (batch,):
        raise RejectedInputError(
            f"expected {batch} logit gradients, got {grad_logits.shape}"
        )
    grad = grad_logits.reshape(batch, 1).astype(np.float64)
    last = net.depth - 1
    collected: list[LayerGradients] = []
    for index in range(last, -1, -1):
        if index < last:
            grad = grad * leaky_relu_grad(
                net.pre_activations[index], net.slope
            )
        layer_grads = layer_backward(
            net.layers[index], grad, controller, index
        )
        collected.append(layer_grads)
        grad = layer_grads.h
    return DiscGradients(layers=tuple(reversed(collected)))


def init_gen(dims: list[int], seed: int) -> GenNet:
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise RejectedInputError(f"invalid generator dims {dims}")
    rng = make_rng(seed, STREAM_GEN_INIT)
    layers = [
        DenseLayer(
            weight=rng.standard_normal((d_in, d_out)) / np.sqrt(d_in),
            bias=np.zeros(d_out),
        )
        for d_in, d_out in zip(dims, dims[1:])
    ]
    return GenNet(layers=layers)


def gen_forward(net: GenNet, z: Mat) -> Mat:
    if z.ndim != 2 or z.shape[1] != net.z_dim:
        raise RejectedInputError(
            f"generator expects {net.z_dim} latent columns, got {z.shape}"
        )
    net.pre_activations = []
    h = z
    last = len(net.layers) - 1
    for index, layer in enumerate(net.layers):
        layer.cached_input = h
        s = h @ layer.weight + layer.bias
        net.pre_activations.append(s)
        h = leaky_relu(s, net.slope) if index < last else s
    return h


def gen_backward(net: GenNet, grad_x: Mat) -> GenGradients:
    if len(net.pre_activations) != len(net.layers):
        raise StateError("gen_backward called before gen_forward")
    if grad_x.shape != net.pre_activations[-1].shape:
        raise RejectedInputError(
            f"expected gradient of shape {net.pre_activations[-1].shape}, "
            f"got {grad_x.shape}"
        )
    grad = grad_x
    last = len(net.layers) - 1
    collected: list[DenseGradients] = []
    for index in range(last, -1, -1):
        layer = net.layers[index]
        if index < last:
            grad = grad * leaky_relu_grad(
                net.pre_activations[index], net.slope
            )
        collected.append(
            DenseGradients(
                weight=layer.cached_input.T @ grad,
                bias=grad.sum(axis=0),
            )
        )
        grad = grad @ layer.weight.T
    return GenGradients(layers=tuple(reversed(collected)), inputs=grad)

"""Forward and hand-derived backward passes of one SVD layer."""

from __future__ import annotations

import numpy as np

from spectrumgan.errors import RejectedInputError, StateError
from spectrumgan.linalg import Mat, make_rng, qr_orthonormalize
from spectrumgan.linalg.rng import STREAM_DISC_INIT
from spectrumgan.spectrum import (
    ControllerTag,
    SpectrumController,
    diagonal_vjp,
    effective_diagonal,
    power_vectors,
)
from spectrumgan.svdnet.model import DiscNet, LayerGradients, SvdLayer


def init_layer(d_in: int, d_out: int, rng: np.random.Generator) -> SvdLayer:
    rank = min(d_in, d_out)
    u = qr_orthonormalize(rng.standard_normal((d_in, rank)))
    v = qr_orthonormalize(rng.standard_normal((d_out, rank)))
    return SvdLayer(u=u, e=np.ones(rank), v=v, bias=np.zeros(d_out))


def init_disc(dims: list[int], seed: int) -> DiscNet:
    """Orthonormal ``U, V``, ``e = 1`` and zero biases for every layer."""
    if len(dims) < 2:
        raise RejectedInputError("dims needs at least an input and output")
    if any(d < 1 for d in dims):
        raise RejectedInputError(f"all dims must be >= 1, got {dims}")
    if dims[-1] != 1:
        raise RejectedInputError("the discriminator must end in one logit")
    rng = make_rng(seed, STREAM_DISC_INIT)
    layers = [
        init_layer(d_in, d_out, rng) for d_in, d_out in zip(dims, dims[1:])
    ]
    return DiscNet(layers=layers)


def effective_weight(
    layer: SvdLayer, controller: SpectrumController, index: int = 0
) -> Mat:
    e_eff = effective_diagonal(layer, controller, index)
    return (layer.u * e_eff) @ layer.v.T


def layer_forward(
    layer: SvdLayer,
    h: Mat,
    controller: SpectrumController,
    index: int = 0,
) -> Mat:
    if h.ndim != 2 or h.shape[1] != layer.d_in:
        raise RejectedInputError(
            f"layer {index} expects inputs with {layer.d_in} columns, "
            f"got shape {h.shape}"
        )
    layer.cached_input = h
    return h @ effective_weight(layer, controller, index) + layer.bias


def _power_raw_gradient(
    layer: SvdLayer,
    grad_w: Mat,
    controller: SpectrumController,
    index: int,
) -> Mat:
    # W_eff = W_raw / sigma with sigma = u^T W_raw v and u, v held fixed
    vectors = power_vectors(controller, index)
    raw = (layer.u * layer.e) @ layer.v.T
    sigma = float(vectors.u @ raw @ vectors.v)
    coupling = float(np.sum(grad_w * raw)) / (sigma * sigma)
    return grad_w / sigma - coupling * np.outer(vectors.u, vectors.v)


def layer_backward(
    layer: SvdLayer,
    grad_s: Mat,
    controller: SpectrumController,
    index: int = 0,
) -> LayerGradients:
    h = layer.cached_input
    if h is None:
        raise StateError(f"layer {index}: backward called before forward")
    if grad_s.shape != (h.shape[0], layer.d_out):
        raise RejectedInputError(
            f"layer {index} expects upstream gradient of shape "
            f"{(h.shape[0], layer.d_out)}, got {grad_s.shape}"
        )
    weight = effective_weight(layer, controller, index)
    grad_h = grad_s @ weight.T
    grad_w = h.T @ grad_s
    grad_bias = grad_s.sum(axis=0)

    if controller.tag is ControllerTag.POWER_ITER_SN:
        grad_raw = _power_raw_gradient(layer, grad_w, controller, index)
        projected = grad_raw @ layer.v
        return LayerGradients(
            h=grad_h,
            u=projected * layer.e,
            v=(grad_raw.T @ layer.u) * layer.e,
            e=np.sum(layer.u * projected, axis=0),
            bias=grad_bias,
        )

    e_eff = effective_diagonal(layer, controller, index)
    projected = grad_w @ layer.v
    per_value = np.sum(layer.u * projected, axis=0)
    return LayerGradients(
        h=grad_h,
        u=projected * e_eff,
        v=(grad_w.T @ layer.u) * e_eff,
        e=diagonal_vjp(layer, controller, per_value, index),
        bias=grad_bias,
    )


def orth_penalty(layer: SvdLayer) -> tuple[float, Mat, Mat]:
    """``||U^T U - I||_F^2 + ||V^T V - I||_F^2`` and its gradients."""
    eye = np.eye(layer.rank)
    gram_u = layer.u.T @ layer.u - eye
    gram_v = layer.v.T @ layer.v - eye
    value = float(np.sum(gram_u**2) + np.sum(gram_v**2))
    return value, 4.0 * layer.u @ gram_u, 4.0 * layer.v @ gram_v


def orth_penalties(layer: SvdLayer) -> tuple[float, float]:
    eye = np.eye(layer.rank)
    return (
        float(np.sum((layer.u.T @ layer.u - eye) ** 2)),
        float(np.sum((layer.v.T @ layer.v - eye) ** 2)),
    )

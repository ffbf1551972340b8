"""Spectrum regularizers ``R(E)`` with their gradients.

Every regularizer returns its value already multiplied by ``gamma`` and
the gradient of that weighted value.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from spectrumgan.errors import DomainError, RejectedInputError
from spectrumgan.linalg import Vec
from spectrumgan.spectrum.model import ControllerTag, SpectrumController
from spectrumgan.spectrum.reference import (
    log_reference_density,
    log_reference_density_grad,
)
from spectrumgan.spectrum.update import diagonal_vjp, effective_diagonal

if TYPE_CHECKING:
    from spectrumgan.svdnet.model import DiscNet

LOG_FLOOR = 1e-6
GAP_FLOOR = 1e-6


@dataclass(frozen=True)
class RegularizerResult:
    value: float
    grads: tuple[Vec, ...]


def lipschitz_reg(e_max: Vec, gamma: float) -> tuple[float, Vec]:
    """``gamma * max(sum_i log e_max_i, 0)``; zero subgradient at the kink."""
    e_max = np.asarray(e_max, dtype=np.float64)
    if np.any(e_max <= 0):
        raise DomainError("Lipschitz regularizer needs positive maxima")
    total = float(np.sum(np.log(e_max)))
    if total <= 0:
        return 0.0, np.zeros_like(e_max)
    return gamma * total, gamma / e_max


def dopt_reg(
    e_lists: Sequence[Vec], gamma: float
) -> tuple[float, tuple[Vec, ...]]:
    value = 0.0
    grads = []
    for e in e_lists:
        e = np.asarray(e, dtype=np.float64)
        floored = np.maximum(e, LOG_FLOOR)
        value -= float(np.sum(np.log(floored)))
        grads.append(np.where(e > LOG_FLOOR, -gamma / floored, 0.0))
    return gamma * value, tuple(grads)


def _divergence_layer(e: Vec, a: float) -> tuple[float, Vec]:
    r = e.shape[0]
    order = np.argsort(e, kind="stable")
    s = e[order]
    raw_gaps = np.diff(s)
    gaps = np.maximum(raw_gaps, GAP_FLOOR)
    head = s[:-1]
    terms = (
        -math.log(r - 1)
        - np.log(gaps)
        - log_reference_density(head, a)
    )
    value = float(np.sum(terms)) / (r - 1)

    active = raw_gaps > GAP_FLOOR
    gap_grad = np.where(active, -1.0 / gaps, 0.0)
    grad_sorted = np.zeros(r)
    grad_sorted[1:] += gap_grad
    grad_sorted[:-1] -= gap_grad
    grad_sorted[:-1] -= log_reference_density_grad(head, a)
    grad = np.empty(r)
    grad[order] = grad_sorted / (r - 1)
    return value, grad


def divergence_reg(
    e_lists: Sequence[Vec], gamma: float, a: float
) -> tuple[float, tuple[Vec, ...]]:
    """Discretized divergence against the reference density.

    Entries are sorted ascending so the gaps ``e_(k+1) - e_(k)`` are
    non-negative; gradients are routed back through the sort permutation.
    """
    value = 0.0
    grads = []
    for index, e in enumerate(e_lists):
        e = np.asarray(e, dtype=np.float64)
        if e.shape[0] < 2:
            raise RejectedInputError(
                f"divergence regularizer needs rank >= 2 (layer {index})"
            )
        if np.any(e < 0) or np.any(e > 1):
            raise DomainError(
                f"divergence regularizer needs entries in [0, 1] "
                f"(layer {index})"
            )
        layer_value, layer_grad = _divergence_layer(e, a)
        value += layer_value
        grads.append(gamma * layer_grad)
    return gamma * value, tuple(grads)


def _route_lipschitz(
    effective: list[Vec], gamma: float
) -> tuple[float, list[Vec]]:
    tops = [int(np.argmax(e)) for e in effective]
    maxima = np.array([e[top] for e, top in zip(effective, tops)])
    value, top_grads = lipschitz_reg(maxima, gamma)
    grads = []
    for e, top, g in zip(effective, tops, top_grads):
        grad = np.zeros_like(e)
        grad[top] = g
        grads.append(grad)
    return value, grads


def regularizer_dispatch(
    controller: SpectrumController, net: DiscNet
) -> RegularizerResult:
    """Weighted ``gamma * R(E)`` and per-layer gradients w.r.t. stored ``e``.

    D-optimal and divergence terms cover every layer but the last;
    the Lipschitz term covers all layers.
    """
    tag = controller.tag
    layers = net.layers
    zero = RegularizerResult(
        value=0.0, grads=tuple(np.zeros_like(layer.e) for layer in layers)
    )
    if tag not in (
        ControllerTag.LIPSCHITZ_REG,
        ControllerTag.DOPTIMAL_PLUS_SN,
        ControllerTag.DIVERGENCE_PLUS_SC,
    ):
        return zero

    effective = [
        effective_diagonal(layer, controller, index)
        for index, layer in enumerate(layers)
    ]
    if tag is ControllerTag.LIPSCHITZ_REG:
        value, grads = _route_lipschitz(effective, controller.gamma)
    else:
        inner = effective[:-1]
        if tag is ControllerTag.DOPTIMAL_PLUS_SN:
            value, inner_grads = dopt_reg(inner, controller.gamma)
        else:
            value, inner_grads = divergence_reg(
                inner, controller.gamma, controller.ref_scale
            )
        grads = list(inner_grads) + [np.zeros_like(effective[-1])]

    pulled = tuple(
        diagonal_vjp(layer, controller, grad, index)
        for index, (layer, grad) in enumerate(zip(layers, grads))
    )
    return RegularizerResult(value=value, grads=pulled)

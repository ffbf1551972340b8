"""Singular-value update and the effective diagonal of each controller.

The effective diagonal ``e'`` is what the realized weight
``W = U diag(e') V^T`` uses. ``diagonal_vjp`` pulls a gradient with
respect to ``e'`` back to the stored ``e``.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np

from spectrumgan.errors import (
    PowerIterationRestartError,
    StateError,
    ZeroSpectrumError,
)
from spectrumgan.linalg import Vec, make_rng, power_step
from spectrumgan.linalg.rng import STREAM_POWER
from spectrumgan.spectrum.clipping import project_clip
from spectrumgan.spectrum.model import (
    ControllerTag,
    PowerVectors,
    SpectrumController,
)

if TYPE_CHECKING:
    from spectrumgan.svdnet.model import SvdLayer

logger = logging.getLogger(__name__)

ZERO_SPECTRUM = 1e-12
POWER_RESEEDS = 3


def _top_index(e: Vec) -> int:
    # np.argmax keeps the lowest index on ties
    return int(np.argmax(e))


def _normalizer(e: Vec) -> tuple[int, float]:
    top = _top_index(e)
    e_max = float(e[top])
    if e_max <= ZERO_SPECTRUM:
        raise ZeroSpectrumError(
            f"cannot normalize by largest singular value {e_max:.3e}"
        )
    return top, e_max


def _initial_power_vector(
    controller: SpectrumController, index: int, size: int, attempt: int
) -> Vec:
    rng = make_rng(controller.seed, STREAM_POWER, index, attempt)
    return rng.standard_normal(size)


def _power_update(
    layer: SvdLayer, controller: SpectrumController, index: int
) -> None:
    weight = (layer.u * layer.e) @ layer.v.T
    state = controller.power_state.get(index)
    u = (
        state.u
        if state is not None
        else _initial_power_vector(controller, index, layer.d_in, 0)
    )
    for attempt in range(1, POWER_RESEEDS + 1):
        try:
            _, u_next, v_next = power_step(weight, u)
        except PowerIterationRestartError:
            logger.warning(
                "Power iteration collapsed on layer %d; reseeding u", index
            )
            u = _initial_power_vector(
                controller, index, layer.d_in, attempt
            )
            continue
        controller.power_state[index] = PowerVectors(u=u_next, v=v_next)
        return
    raise PowerIterationRestartError(
        f"power iteration on layer {index} failed after reseeding"
    )


def singular_value_update(
    layer: SvdLayer, controller: SpectrumController, index: int = 0
) -> None:
    """Apply the controller's per-forward update to ``layer.e`` in place."""
    tag = controller.tag
    if tag.clips:
        layer.e[...] = project_clip(layer.e)
    elif tag is ControllerTag.ORTHOGONAL:
        layer.e[...] = 1.0
    elif tag.normalizes:
        _normalizer(layer.e)
    elif tag is ControllerTag.POWER_ITER_SN:
        _power_update(layer, controller, index)


def project_onto_constraint(
    layer: SvdLayer, controller: SpectrumController
) -> None:
    """Restore feasibility of ``e`` after an optimizer step."""
    if controller.tag.clips:
        layer.e[...] = project_clip(layer.e)
    elif controller.tag is ControllerTag.ORTHOGONAL:
        layer.e[...] = 1.0


def power_vectors(controller: SpectrumController, index: int) -> PowerVectors:
    vectors = controller.power_state.get(index)
    if vectors is None:
        raise StateError(
            f"no power-iteration state for layer {index}; run "
            "singular_value_update first"
        )
    return vectors


def _power_projections(
    layer: SvdLayer, vectors: PowerVectors
) -> tuple[Vec, Vec]:
    return layer.u.T @ vectors.u, layer.v.T @ vectors.v


def power_sigma(
    layer: SvdLayer, controller: SpectrumController, index: int
) -> float:
    """``u^T W v`` on the raw weight with the stored ``u, v`` held fixed."""
    left, right = _power_projections(layer, power_vectors(controller, index))
    sigma = float(np.sum(layer.e * left * right))
    if sigma <= ZERO_SPECTRUM:
        raise ZeroSpectrumError(
            f"power estimate {sigma:.3e} on layer {index} is not positive"
        )
    return sigma


def effective_diagonal(
    layer: SvdLayer, controller: SpectrumController, index: int = 0
) -> Vec:
    tag = controller.tag
    if tag.normalizes:
        _, e_max = _normalizer(layer.e)
        return layer.e / e_max
    if tag is ControllerTag.POWER_ITER_SN:
        return layer.e / power_sigma(layer, controller, index)
    return layer.e.copy()


def diagonal_vjp(
    layer: SvdLayer,
    controller: SpectrumController,
    grad: Vec,
    index: int = 0,
) -> Vec:
    """Pull ``d f / d e'`` back to ``d f / d e`` holding ``U, V`` fixed."""
    tag = controller.tag
    e = layer.e
    if tag is ControllerTag.ORTHOGONAL:
        return np.zeros_like(e)
    if tag.normalizes:
        top, e_max = _normalizer(e)
        pulled = grad / e_max
        pulled[top] -= float(grad @ e) / (e_max * e_max)
        return pulled
    if tag is ControllerTag.POWER_ITER_SN:
        left, right = _power_projections(
            layer, power_vectors(controller, index)
        )
        sigma = power_sigma(layer, controller, index)
        return grad / sigma - float(grad @ e) / (sigma * sigma) * (
            left * right
        )
    return np.array(grad, dtype=np.float64, copy=True)

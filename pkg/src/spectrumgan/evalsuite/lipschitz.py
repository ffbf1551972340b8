"""Empirical Lipschitz ratio against the layer-wise product bound."""

from __future__ import annotations

import copy
from dataclasses import dataclass

import numpy as np

from spectrumgan.errors import RejectedInputError
from spectrumgan.linalg import Mat, make_rng
from spectrumgan.linalg.rng import STREAM_PROBE
from spectrumgan.spectrum import SpectrumController, effective_diagonal
from spectrumgan.svdnet import DiscNet, disc_forward

COINCIDENT = 1e-12
NEAR_PAIR_SCALE = 1e-3
DEFAULT_PAIRS = 10_000


@dataclass(frozen=True)
class LipschitzProbe:
    empirical_max_ratio: float
    product_bound: float


def product_bound(net: DiscNet, controller: SpectrumController) -> float:
    """``prod_i max_k |e'_ik|``; activations are 1-Lipschitz."""
    bound = 1.0
    for index, layer in enumerate(net.layers):
        bound *= float(
            np.max(np.abs(effective_diagonal(layer, controller, index)))
        )
    return bound


def _bounding_box(anchors: Mat | None, dim: int) -> tuple[Mat, Mat]:
    if anchors is None:
        return -np.ones(dim), np.ones(dim)
    return anchors.min(axis=0), anchors.max(axis=0)


def lipschitz_probe(
    net: DiscNet,
    controller: SpectrumController,
    n_pairs: int = DEFAULT_PAIRS,
    seed: int = 0,
    *,
    anchors: Mat | None = None,
) -> LipschitzProbe:
    """Max of ``|D(x) - D(y)| / ||x - y||`` over sampled pairs.

    ``x`` is drawn from ``anchors`` (data samples) when given, otherwise
    uniformly from ``[-1, 1]^d``. Half of the partners ``y`` are uniform in
    the bounding box, the other half are small perturbations of ``x``.
    The probe runs on a copy so the caller's caches stay untouched.
    """
    if n_pairs < 1:
        raise RejectedInputError("lipschitz_probe needs at least one pair")
    dim = net.dims[0]
    if anchors is not None and anchors.shape[1] != dim:
        raise RejectedInputError(
            f"anchors have {anchors.shape[1]} columns, network expects {dim}"
        )
    rng = make_rng(seed, STREAM_PROBE)
    low, high = _bounding_box(anchors, dim)
    span = np.maximum(high - low, COINCIDENT)

    if anchors is None:
        x = rng.uniform(low, high, size=(n_pairs, dim))
    else:
        x = anchors[rng.integers(anchors.shape[0], size=n_pairs)]
    y = rng.uniform(low, high, size=(n_pairs, dim))
    near = n_pairs // 2
    y[:near] = x[:near] + NEAR_PAIR_SCALE * span * rng.standard_normal(
        (near, dim)
    )

    distances = np.linalg.norm(x - y, axis=1)
    coincident = distances < COINCIDENT
    while np.any(coincident):
        y[coincident] = rng.uniform(
            low, high, size=(int(np.count_nonzero(coincident)), dim)
        )
        distances = np.linalg.norm(x - y, axis=1)
        coincident = distances < COINCIDENT

    snapshot = copy.deepcopy(net)
    fx = disc_forward(snapshot, x, controller)
    fy = disc_forward(snapshot, y, controller)
    ratios = np.abs(fx - fy) / distances
    return LipschitzProbe(
        empirical_max_ratio=float(np.max(ratios)),
        product_bound=product_bound(net, controller),
    )

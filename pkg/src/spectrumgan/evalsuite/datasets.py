"""Toy 2-D Gaussian-mixture data on a ring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from spectrumgan.errors import RejectedInputError
from spectrumgan.linalg import Mat, make_rng


@dataclass(frozen=True)
class RingSpec:
    modes: int = 8
    radius: float = 2.0
    sigma: float = 0.02

    def __post_init__(self) -> None:
        if self.modes < 1:
            raise RejectedInputError("ring needs at least one mode")
        if self.radius < 0:
            raise RejectedInputError("ring radius must be >= 0")
        if self.sigma < 0:
            raise RejectedInputError("ring sigma must be >= 0")

    @property
    def centers(self) -> Mat:
        return ring_centers(self.modes, self.radius)


def ring_centers(modes: int, radius: float) -> Mat:
    angles = 2.0 * np.pi * np.arange(modes) / modes
    return radius * np.column_stack([np.cos(angles), np.sin(angles)])


def sample_ring(
    count: int,
    modes: int,
    radius: float,
    sigma: float,
    seed: int | np.random.Generator,
) -> Mat:
    """Equal-weight Gaussian mixture centred on a ring.

    ``seed`` may be an integer or an existing generator, so training can
    draw an endless stream from one persistent generator.
    """
    RingSpec(modes=modes, radius=radius, sigma=sigma)
    if count < 0:
        raise RejectedInputError("count must be >= 0")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    component = rng.integers(modes, size=count)
    noise = rng.standard_normal((count, 2))
    return ring_centers(modes, radius)[component] + sigma * noise

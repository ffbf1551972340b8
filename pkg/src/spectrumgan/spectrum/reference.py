"""Reference distribution ``y = 1 - min(|z|, 1)`` with ``z ~ N(0, a^2)``.

Only the continuous part on ``(0, 1]`` is modelled; the atom at ``y = 0``
is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spectrumgan.errors import DomainError
from spectrumgan.linalg import Vec, make_rng


def _check_scale(a: float) -> None:
    if a <= 0:
        raise DomainError(f"reference scale must be > 0, got {a}")


def reference_density(y: float, a: float) -> float:
    _check_scale(a)
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"reference density is defined on [0, 1], got {y}")
    return math.sqrt(2.0 / (math.pi * a * a)) * math.exp(
        -((1.0 - y) ** 2) / (2.0 * a * a)
    )


def log_reference_density(y: Vec, a: float) -> Vec:
    _check_scale(a)
    return math.log(math.sqrt(2.0 / math.pi) / a) - (1.0 - y) ** 2 / (
        2.0 * a * a
    )


def log_reference_density_grad(y: Vec, a: float) -> Vec:
    return (1.0 - y) / (a * a)


@dataclass(frozen=True)
class ReferenceSpectrum:
    normalized_ranks: Vec
    values: Vec


def sample_reference_spectrum(
    count: int, a: float, seed: int = 0
) -> ReferenceSpectrum:
    """Order statistics of ``count`` reference draws, largest first."""
    _check_scale(a)
    if count < 1:
        raise DomainError("count must be at least 1")
    z = make_rng(seed).normal(0.0, a, size=count)
    values = np.sort(1.0 - np.minimum(np.abs(z), 1.0))[::-1]
    ranks = np.arange(1, count + 1, dtype=np.float64) / count
    return ReferenceSpectrum(normalized_ranks=ranks, values=values.copy())

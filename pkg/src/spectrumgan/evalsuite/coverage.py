"""Mode coverage of generated samples."""

from __future__ import annotations

import numpy as np

from spectrumgan.errors import RejectedInputError
from spectrumgan.linalg import Mat

QUALITY_SIGMAS = 3.0
MIN_MODE_SHARE = 0.01


def mode_coverage(
    samples: Mat, centers: Mat, sigma: float
) -> tuple[int, float]:
    """``(modes_covered, hq_fraction)``.

    A sample is high quality when it lies within three sigma of its
    nearest center; a mode is covered when it is the nearest center of at
    least ``max(1, 1% of samples)`` high-quality samples.
    """
    count = samples.shape[0]
    if count == 0:
        raise RejectedInputError("mode_coverage needs at least one sample")
    distances = np.linalg.norm(
        samples[:, None, :] - centers[None, :, :], axis=2
    )
    nearest = np.argmin(distances, axis=1)
    high_quality = distances[np.arange(count), nearest] <= (
        QUALITY_SIGMAS * sigma
    )
    per_mode = np.bincount(
        nearest[high_quality], minlength=centers.shape[0]
    )
    threshold = max(1.0, MIN_MODE_SHARE * count)
    covered = int(np.count_nonzero(per_mode >= threshold))
    return covered, float(np.count_nonzero(high_quality)) / count

"""Entry-wise projection onto the unit box."""

from __future__ import annotations

import numpy as np

from spectrumgan.linalg import Vec


def project_clip(e: Vec) -> Vec:
    """``g(t) = 0 if t <= 0, t if 0 < t < 1, 1 if t >= 1``, entry-wise."""
    return np.clip(np.asarray(e, dtype=np.float64), 0.0, 1.0)

"""Central finite differences against hand-derived gradients."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

FD_STEP = 1e-5
SCALE_FLOOR = 1e-3


def numerical_gradient(
    objective: Callable[[], float], array: np.ndarray, step: float = FD_STEP
) -> np.ndarray:
    """Perturb ``array`` in place entry by entry; it is restored after."""
    grad = np.zeros(array.shape, dtype=np.float64)
    for index in np.ndindex(array.shape):
        saved = float(array[index])
        array[index] = saved + step
        plus = objective()
        array[index] = saved - step
        minus = objective()
        array[index] = saved
        grad[index] = (plus - minus) / (2.0 * step)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """``||a - n|| / max(||a|| + ||n||, 1e-3)``."""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    scale = max(
        float(np.linalg.norm(analytic) + np.linalg.norm(numeric)),
        SCALE_FLOOR,
    )
    return float(np.linalg.norm(analytic - numeric)) / scale


def worst_error(pairs: list[tuple[np.ndarray, np.ndarray]]) -> float:
    return max(relative_error(analytic, fd) for analytic, fd in pairs)

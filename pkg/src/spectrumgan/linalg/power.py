"""Power-iteration estimate of the spectral norm, SN-GAN style."""

from __future__ import annotations

import numpy as np

from spectrumgan.errors import PowerIterationRestartError, RejectedInputError
from spectrumgan.linalg.dense import Mat, Vec

ZERO_NORM = 1e-300


def _normalize(x: Vec, what: str) -> Vec:
    norm = float(np.linalg.norm(x))
    if norm <= ZERO_NORM:
        raise PowerIterationRestartError(f"{what} is numerically zero")
    return x / norm


def power_step(w: Mat, u: Vec, steps: int = 1) -> tuple[float, Vec, Vec]:
    """Run ``steps`` power iterations; return ``(sigma_hat, u, v)``.

    ``sigma_hat = u^T w v`` equals ``||w v||`` and therefore never exceeds
    the largest singular value of ``w``.
    """
    if steps < 1:
        raise RejectedInputError("power iteration needs at least one step")
    if u.shape != (w.shape[0],):
        raise RejectedInputError(
            f"u has shape {u.shape}, expected ({w.shape[0]},)"
        )
    u = _normalize(np.asarray(u, dtype=np.float64), "u")
    v = u
    for _ in range(steps):
        v = _normalize(w.T @ u, "w^T u")
        u = _normalize(w @ v, "w v")
    sigma = float(u @ w @ v)
    return sigma, u, v


def power_iter_sn(w: Mat, u: Vec, steps: int = 1) -> tuple[float, Vec]:
    sigma, u_next, _ = power_step(w, u, steps)
    return sigma, u_next

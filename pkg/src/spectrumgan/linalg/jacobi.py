"""One-sided (Hestenes) Jacobi SVD.

Used as the ground-truth oracle for singular-value fidelity checks, so it
favours determinism and accuracy over speed: cyclic sweeps over column
pairs, each rotation zeroing one Gram off-diagonal entry.
"""

from __future__ import annotations

import math

import numpy as np

from spectrumgan.errors import NumericError, RejectedInputError
from spectrumgan.linalg.dense import Mat, Vec

MAX_SWEEPS = 60
EPS = float(np.finfo(np.float64).eps)
ABSOLUTE_TOLERANCE = 1e-14


def _rotation(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    zeta = (beta - alpha) / (2.0 * gamma)
    t = 1.0 / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    if zeta < 0:
        t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, c * t


def _complete_columns(u: Mat, known: int) -> Mat:
    """Replace columns ``known:`` of ``u`` with an orthonormal completion."""
    rows, cols = u.shape
    basis = np.hstack([u[:, :known], np.eye(rows)])
    q, _ = np.linalg.qr(basis, mode="reduced")
    completed = u.copy()
    completed[:, known:] = q[:, known:cols]
    return completed


def _tall_svd(a: Mat) -> tuple[Mat, Vec, Mat]:
    rows, cols = a.shape
    work = np.array(a, dtype=np.float64, copy=True)
    v = np.eye(cols)
    fro = float(np.linalg.norm(work))
    # columns at or below this squared norm are dropped by the zero cutoff
    null = (ABSOLUTE_TOLERANCE * fro) ** 2
    pair_tolerance = rows * EPS

    residual = 0.0
    for _ in range(MAX_SWEEPS):
        residual = 0.0
        rotated = False
        for p in range(cols - 1):
            for q in range(p + 1, cols):
                col_p = work[:, p]
                col_q = work[:, q]
                alpha = float(col_p @ col_p)
                beta = float(col_q @ col_q)
                gamma = float(col_p @ col_q)
                scale = math.sqrt(alpha * beta)
                if scale > 0.0:
                    residual = max(residual, abs(gamma) / scale)
                if (
                    min(alpha, beta) <= null
                    or abs(gamma) <= pair_tolerance * scale
                ):
                    continue
                c, s = _rotation(alpha, beta, gamma)
                new_p = c * col_p - s * col_q
                new_q = s * col_p + c * col_q
                work[:, p] = new_p
                work[:, q] = new_q
                v_p = v[:, p].copy()
                v[:, p] = c * v_p - s * v[:, q]
                v[:, q] = s * v_p + c * v[:, q]
                rotated = True
        if not rotated:
            break
    else:
        raise NumericError(
            f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps",
            residual=residual,
        )

    sigma = np.linalg.norm(work, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    work = work[:, order]
    v = v[:, order]

    # columns at rounding level of the largest one are numerically zero
    cutoff = max(
        max(rows, cols) * EPS * float(sigma[0]), ABSOLUTE_TOLERANCE * fro
    )
    u = np.zeros((rows, cols))
    known = int(np.count_nonzero(sigma > cutoff))
    u[:, :known] = work[:, :known] / sigma[:known]
    if known < cols:
        u = _complete_columns(u, known)
        sigma[known:] = 0.0
    return np.ascontiguousarray(u), sigma, np.ascontiguousarray(v)


def jacobi_svd(a: Mat) -> tuple[Mat, Vec, Mat]:
    """Thin SVD ``a = U diag(s) V^T`` with ``s`` sorted descending."""
    if a.ndim != 2 or min(a.shape) < 1:
        raise RejectedInputError("jacobi_svd expects a non-empty 2-D matrix")
    if not np.all(np.isfinite(a)):
        raise RejectedInputError("jacobi_svd requires finite entries")
    if a.shape[0] >= a.shape[1]:
        return _tall_svd(a)
    v, s, u = _tall_svd(np.ascontiguousarray(a.T))
    return u, s, v

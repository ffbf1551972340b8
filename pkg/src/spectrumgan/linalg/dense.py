"""Matrix products, norms and orthonormalization on float64 arrays."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from spectrumgan.errors import DegeneracyError, RejectedInputError

Mat = npt.NDArray[np.float64]
Vec = npt.NDArray[np.float64]

PIVOT_TOLERANCE = 1e-12


def as_matrix(values: npt.ArrayLike) -> Mat:
    """Copy ``values`` into a C-ordered float64 matrix."""
    mat = np.array(values, dtype=np.float64, order="C")
    if mat.ndim != 2:
        raise RejectedInputError(
            f"expected a 2-D matrix, got {mat.ndim} dimension(s)"
        )
    return mat


def matmul(a: Mat, b: Mat) -> Mat:
    if a.ndim != 2 or b.ndim != 2:
        raise RejectedInputError("matmul expects two 2-D matrices")
    if a.shape[1] != b.shape[0]:
        raise RejectedInputError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by "
            f"{b.shape[0]}x{b.shape[1]}"
        )
    return np.ascontiguousarray(a @ b)


def frobenius_norm(a: npt.ArrayLike) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64)))


def qr_orthonormalize(a: Mat) -> Mat:
    """Orthonormal basis of the column span of ``a``.

    Columns are sign-fixed so the triangular factor has a positive
    diagonal; an already orthonormal input comes back unchanged up to
    rounding.
    """
    if a.ndim != 2 or a.shape[1] < 1:
        raise RejectedInputError("qr_orthonormalize expects a 2-D matrix")
    rows, cols = a.shape
    if rows < cols:
        raise RejectedInputError(
            f"cannot orthonormalize {cols} columns in dimension {rows}"
        )
    q, r = np.linalg.qr(np.asarray(a, dtype=np.float64), mode="reduced")
    pivots = np.diag(r)
    weakest = float(np.min(np.abs(pivots)))
    if weakest < PIVOT_TOLERANCE:
        raise DegeneracyError(
            f"rank-deficient input: smallest pivot {weakest:.3e}"
        )
    return np.ascontiguousarray(q * np.sign(pivots))

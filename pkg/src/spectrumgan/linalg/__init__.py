"""Deterministic dense linear algebra and seeded random streams."""

from spectrumgan.linalg.dense import (
    Mat,
    Vec,
    as_matrix,
    frobenius_norm,
    matmul,
    qr_orthonormalize,
)
from spectrumgan.linalg.jacobi import jacobi_svd
from spectrumgan.linalg.power import power_iter_sn, power_step
from spectrumgan.linalg.rng import make_rng

__all__ = [
    "Mat",
    "Vec",
    "as_matrix",
    "frobenius_norm",
    "jacobi_svd",
    "make_rng",
    "matmul",
    "power_iter_sn",
    "power_step",
    "qr_orthonormalize",
]

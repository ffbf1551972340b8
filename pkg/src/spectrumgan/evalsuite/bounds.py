"""Generalization bound under spectrum control, explicit constants."""

from __future__ import annotations

import math
from dataclasses import dataclass

from spectrumgan.errors import DomainError


@dataclass(frozen=True)
class GenBoundInput:
    n: int
    d: int
    depth: int
    b_x: float
    b_w: tuple[float, ...]
    rho_phi: float = 1.0
    delta: float = 0.1
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "b_w", tuple(float(b) for b in self.b_w))
        if self.n < 1 or self.d < 1 or self.depth < 1:
            raise DomainError("n, d and depth must be positive")
        if len(self.b_w) != self.depth:
            raise DomainError(
                f"expected {self.depth} spectral-norm bounds, "
                f"got {len(self.b_w)}"
            )
        if self.b_x <= 0 or any(b <= 0 for b in self.b_w):
            raise DomainError("norm bounds must be positive")
        if self.rho_phi <= 0:
            raise DomainError("rho_phi must be positive")
        if not 0.0 < self.delta < 1.0:
            raise DomainError("delta must lie in (0, 1)")
        if self.epsilon < 0:
            raise DomainError("epsilon must be >= 0")
        if not math.isfinite(self.beta):
            raise DomainError("beta = B_x * prod(B_W) overflows")

    @property
    def beta(self) -> float:
        return self.b_x * math.prod(self.b_w)

    @property
    def spectrum_constrained(self) -> bool:
        return all(b == 1.0 for b in self.b_w)


def excess_gen_bound(inp: GenBoundInput) -> float:
    n, d, depth, rho, beta = inp.n, inp.d, inp.depth, inp.rho_phi, inp.beta
    log_arg = 2.0 * math.sqrt(d * n) * depth * beta
    if log_arg <= 1.0:
        raise DomainError(
            f"log argument 2*sqrt(dn)*L*beta = {log_arg:.6g} must exceed 1"
        )
    return (
        16.0 * rho / n
        + 48.0 * rho * beta * math.sqrt(d * d * depth * math.log(log_arg))
        / math.sqrt(n)
        + 12.0 * rho * beta * math.sqrt(math.log(1.0 / inp.delta) / n)
        + inp.epsilon
    )


def log_covering_number(d: int, depth: int, beta: float, eps: float) -> float:
    """``d^2 L log(1 + sqrt(d) L beta / eps)``."""
    if eps <= 0:
        raise DomainError("covering radius eps must be > 0")
    if d < 1 or depth < 1 or beta < 0:
        raise DomainError("d, depth must be positive and beta >= 0")
    return d * d * depth * math.log1p(math.sqrt(d) * depth * beta / eps)

"""Spectrum-control strategies: the controller value and its catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
import sys

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # Python 3.10 backport of enum.StrEnum
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

from spectrumgan.errors import RejectedInputError
from spectrumgan.linalg import Vec

DEFAULT_GAMMA = 1.0
DEFAULT_DIVERGENCE_GAMMA = 0.05
DEFAULT_REF_SCALE = 0.5


class ControllerTag(StrEnum):
    ORTHOGONAL = "orthogonal"
    SPECTRAL_NORM_SVD = "sn-svd"
    SPECTRAL_CONSTRAINT = "constraint"
    LIPSCHITZ_REG = "lipschitz"
    DOPTIMAL_PLUS_SN = "dopt-sn"
    DIVERGENCE_PLUS_SC = "divergence"
    POWER_ITER_SN = "power-iter"

    @property
    def clips(self) -> bool:
        return self in (
            ControllerTag.SPECTRAL_CONSTRAINT,
            ControllerTag.DIVERGENCE_PLUS_SC,
        )

    @property
    def normalizes(self) -> bool:
        return self in (
            ControllerTag.SPECTRAL_NORM_SVD,
            ControllerTag.DOPTIMAL_PLUS_SN,
        )

    @property
    def bounds_spectrum(self) -> bool:
        """True when every effective singular value is kept in [0, 1]."""
        return self.clips or self is ControllerTag.ORTHOGONAL


@dataclass(frozen=True)
class PowerVectors:
    u: Vec
    v: Vec


@dataclass(eq=False)
class SpectrumController:
    tag: ControllerTag
    gamma: float = DEFAULT_GAMMA
    ref_scale: float = DEFAULT_REF_SCALE
    seed: int = 0
    power_state: dict[int, PowerVectors] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.tag = ControllerTag(self.tag)
        if self.gamma < 0:
            raise RejectedInputError("gamma must be >= 0")
        if self.ref_scale <= 0:
            raise RejectedInputError("ref_scale must be > 0")


def default_gamma(tag: ControllerTag | str) -> float:
    if ControllerTag(tag) is ControllerTag.DIVERGENCE_PLUS_SC:
        return DEFAULT_DIVERGENCE_GAMMA
    return DEFAULT_GAMMA


def build_controller(
    tag: ControllerTag | str,
    *,
    gamma: float | None = None,
    ref_scale: float = DEFAULT_REF_SCALE,
    seed: int = 0,
) -> SpectrumController:
    try:
        resolved = ControllerTag(tag)
    except ValueError as exc:
        known = ", ".join(item.value for item in ControllerTag)
        raise RejectedInputError(
            f"unknown controller {tag!r}; expected one of: {known}"
        ) from exc
    return SpectrumController(
        tag=resolved,
        gamma=default_gamma(resolved) if gamma is None else gamma,
        ref_scale=ref_scale,
        seed=seed,
    )

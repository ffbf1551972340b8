"""Adversarial losses on logits with their gradients.

Discriminator losses are the quantities the discriminator maximizes;
generator losses are minimized.
"""

from __future__ import annotations

from dataclasses import dataclass
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

import numpy as np

from spectrumgan.errors import RejectedInputError
from spectrumgan.linalg import Vec


class LossFamily(StrEnum):
    GAN_LOG = "gan_log"
    HINGE = "hinge"


class GenLossForm(StrEnum):
    LOG = "log"
    LITERAL = "literal"


@dataclass(frozen=True)
class DiscLoss:
    value: float
    grad_real: Vec
    grad_fake: Vec


@dataclass(frozen=True)
class GenLoss:
    value: float
    grad: Vec


def softplus(x: Vec) -> Vec:
    return np.logaddexp(0.0, x)


def sigmoid(x: Vec) -> Vec:
    return np.exp(-softplus(-x))


def _logits(values: Vec, name: str) -> Vec:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] == 0:
        raise RejectedInputError(f"{name} must be a non-empty vector")
    return values


def disc_loss_ganlog(logits_real: Vec, logits_fake: Vec) -> DiscLoss:
    """``mean log A(D(x)) + mean log(1 - A(D(G(z))))`` with sigmoid ``A``."""
    real = _logits(logits_real, "logits_real")
    fake = _logits(logits_fake, "logits_fake")
    value = -float(np.mean(softplus(-real))) - float(
        np.mean(softplus(fake))
    )
    return DiscLoss(
        value=value,
        grad_real=sigmoid(-real) / real.shape[0],
        grad_fake=-sigmoid(fake) / fake.shape[0],
    )


def disc_loss_hinge(logits_real: Vec, logits_fake: Vec) -> DiscLoss:
    real = _logits(logits_real, "logits_real")
    fake = _logits(logits_fake, "logits_fake")
    value = float(np.mean(np.minimum(0.0, real - 1.0))) + float(
        np.mean(np.minimum(0.0, -1.0 - fake))
    )
    return DiscLoss(
        value=value,
        grad_real=np.where(real < 1.0, 1.0, 0.0) / real.shape[0],
        grad_fake=np.where(fake > -1.0, -1.0, 0.0) / fake.shape[0],
    )


def gen_loss_logd(
    logits_fake: Vec, form: GenLossForm | str = GenLossForm.LOG
) -> GenLoss:
    """Non-saturating ``-mean log A(D(G(z)))`` or the literal ``-mean A``."""
    fake = _logits(logits_fake, "logits_fake")
    count = fake.shape[0]
    if GenLossForm(form) is GenLossForm.LOG:
        return GenLoss(
            value=float(np.mean(softplus(-fake))),
            grad=-sigmoid(-fake) / count,
        )
    prob = sigmoid(fake)
    return GenLoss(
        value=-float(np.mean(prob)),
        grad=-prob * (1.0 - prob) / count,
    )


def gen_loss_hinge(logits_fake: Vec) -> GenLoss:
    fake = _logits(logits_fake, "logits_fake")
    return GenLoss(
        value=-float(np.mean(fake)),
        grad=np.full(fake.shape, -1.0 / fake.shape[0]),
    )


def disc_loss(
    family: LossFamily, logits_real: Vec, logits_fake: Vec
) -> DiscLoss:
    if family is LossFamily.HINGE:
        return disc_loss_hinge(logits_real, logits_fake)
    return disc_loss_ganlog(logits_real, logits_fake)


def gen_loss(
    family: LossFamily, logits_fake: Vec, form: GenLossForm
) -> GenLoss:
    if family is LossFamily.HINGE:
        return gen_loss_hinge(logits_fake)
    return gen_loss_logd(logits_fake, form)

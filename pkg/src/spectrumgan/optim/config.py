"""Training settings with loss-family and controller dependent defaults."""

from __future__ import annotations

from dataclasses import dataclass, field

from spectrumgan.errors import RejectedInputError
from spectrumgan.evalsuite import RingSpec
from spectrumgan.optim.losses import GenLossForm, LossFamily
from spectrumgan.spectrum import ControllerTag, default_gamma
from spectrumgan.spectrum.model import DEFAULT_REF_SCALE

DEFAULT_LAMBDA = 10.0
DEFAULT_LR = 2e-4


@dataclass(frozen=True)
class AdamSettings:
    lr: float = DEFAULT_LR
    beta1: float = 0.5
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self) -> None:
        if self.lr <= 0:
            raise RejectedInputError("learning rate must be > 0")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise RejectedInputError("Adam betas must lie in [0, 1)")
        if self.eps <= 0:
            raise RejectedInputError("Adam eps must be > 0")


def default_adam(family: LossFamily | str) -> AdamSettings:
    if LossFamily(family) is LossFamily.HINGE:
        return AdamSettings(beta1=0.0, beta2=0.9)
    return AdamSettings()


def default_n_dis(family: LossFamily | str) -> int:
    return 5 if LossFamily(family) is LossFamily.HINGE else 1


@dataclass(frozen=True)
class TrainConfig:
    """One adversarial run. ``None`` fields take family/controller defaults.

    The gan_log family defaults to ``n_dis=1`` with Adam betas
    ``(0.5, 0.999)``; hinge defaults to ``n_dis=5`` with ``(0, 0.9)``.
    Divergence regularization defaults to ``gamma=0.05``, everything else
    to ``gamma=1``.
    """

    controller: ControllerTag = ControllerTag.SPECTRAL_NORM_SVD
    loss_family: LossFamily = LossFamily.GAN_LOG
    gen_loss_form: GenLossForm = GenLossForm.LOG
    lambda_orth: float = DEFAULT_LAMBDA
    gamma: float | None = None
    ref_scale: float = DEFAULT_REF_SCALE
    n_dis: int | None = None
    batch_size: int = 64
    iterations: int = 1000
    disc_adam: AdamSettings | None = None
    gen_adam: AdamSettings | None = None
    z_dim: int = 2
    disc_hidden: tuple[int, ...] = (32, 32)
    gen_hidden: tuple[int, ...] = (64, 64)
    ring: RingSpec = field(default_factory=RingSpec)
    seed: int = 0
    eval_interval: int = 100
    eval_samples: int = 1000
    lip_pairs: int = 2000

    def __post_init__(self) -> None:
        resolve = object.__setattr__
        resolve(self, "controller", ControllerTag(self.controller))
        resolve(self, "loss_family", LossFamily(self.loss_family))
        resolve(self, "gen_loss_form", GenLossForm(self.gen_loss_form))
        resolve(self, "disc_hidden", tuple(self.disc_hidden))
        resolve(self, "gen_hidden", tuple(self.gen_hidden))
        if self.gamma is None:
            resolve(self, "gamma", default_gamma(self.controller))
        if self.n_dis is None:
            resolve(self, "n_dis", default_n_dis(self.loss_family))
        if self.disc_adam is None:
            resolve(self, "disc_adam", default_adam(self.loss_family))
        if self.gen_adam is None:
            resolve(self, "gen_adam", default_adam(self.loss_family))
        self._validate()

    def _validate(self) -> None:
        if self.lambda_orth < 0:
            raise RejectedInputError("lambda_orth must be >= 0")
        if self.gamma is not None and self.gamma < 0:
            raise RejectedInputError("gamma must be >= 0")
        if self.ref_scale <= 0:
            raise RejectedInputError("ref_scale must be > 0")
        if self.n_dis is not None and self.n_dis < 1:
            raise RejectedInputError("n_dis must be >= 1")
        if self.batch_size < 1:
            raise RejectedInputError("batch_size must be >= 1")
        if self.iterations < 0:
            raise RejectedInputError("iterations must be >= 0")
        if self.z_dim < 1:
            raise RejectedInputError("z_dim must be >= 1")
        if any(d < 1 for d in (*self.disc_hidden, *self.gen_hidden)):
            raise RejectedInputError("hidden widths must be >= 1")
        if self.seed < 0:
            raise RejectedInputError("seed must be >= 0")
        if self.eval_interval < 1:
            raise RejectedInputError("eval_interval must be >= 1")
        if self.eval_samples < 1 or self.lip_pairs < 1:
            raise RejectedInputError("eval_samples and lip_pairs must be >= 1")

    @property
    def disc_dims(self) -> list[int]:
        return [2, *self.disc_hidden, 1]

    @property
    def gen_dims(self) -> list[int]:
        return [self.z_dim, *self.gen_hidden, 2]

"""Adam, adversarial losses and the spectrum-controlled training loop."""

from spectrumgan.optim.adam import AdamState, adam_step
from spectrumgan.optim.config import (
    AdamSettings,
    TrainConfig,
    default_adam,
    default_n_dis,
)
from spectrumgan.optim.losses import (
    DiscLoss,
    GenLoss,
    GenLossForm,
    LossFamily,
    disc_loss,
    disc_loss_ganlog,
    disc_loss_hinge,
    gen_loss,
    gen_loss_hinge,
    gen_loss_logd,
)
from spectrumgan.optim.training import (
    RunArtifactRepository,
    StepLosses,
    TrainingRun,
    TrainResult,
    disc_step,
    evaluate,
    gen_step,
    init_run,
    make_checkpoint,
    train,
    train_iteration,
)

__all__ = [
    "AdamSettings",
    "AdamState",
    "DiscLoss",
    "GenLoss",
    "GenLossForm",
    "LossFamily",
    "RunArtifactRepository",
    "StepLosses",
    "TrainConfig",
    "TrainResult",
    "TrainingRun",
    "adam_step",
    "default_adam",
    "default_n_dis",
    "disc_loss",
    "disc_loss_ganlog",
    "disc_loss_hinge",
    "disc_step",
    "evaluate",
    "gen_loss",
    "gen_loss_hinge",
    "gen_loss_logd",
    "gen_step",
    "init_run",
    "make_checkpoint",
    "train",
    "train_iteration",
]

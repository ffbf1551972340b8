"""SVD-reparameterized discriminator layers and a dense generator."""

from spectrumgan.svdnet.layers import (
    effective_weight,
    init_disc,
    init_layer,
    layer_backward,
    layer_forward,
    orth_penalties,
    orth_penalty,
)
from spectrumgan.svdnet.model import (
    Checkpoint,
    DenseGradients,
    DenseLayer,
    DiscGradients,
    DiscNet,
    GenGradients,
    GenNet,
    LayerGradients,
    SvdLayer,
    disc_gradient_arrays,
    disc_parameters,
    gen_gradient_arrays,
    gen_parameters,
)
from spectrumgan.svdnet.networks import (
    apply_singular_value_update,
    disc_backward,
    disc_forward,
    gen_backward,
    gen_forward,
    init_gen,
    max_orth_penalty,
    project_disc,
    reorthonormalize,
)

__all__ = [
    "Checkpoint",
    "DenseGradients",
    "DenseLayer",
    "DiscGradients",
    "DiscNet",
    "GenGradients",
    "GenNet",
    "LayerGradients",
    "SvdLayer",
    "apply_singular_value_update",
    "disc_backward",
    "disc_forward",
    "disc_gradient_arrays",
    "disc_parameters",
    "effective_weight",
    "gen_backward",
    "gen_forward",
    "gen_gradient_arrays",
    "gen_parameters",
    "init_disc",
    "init_gen",
    "init_layer",
    "layer_backward",
    "layer_forward",
    "max_orth_penalty",
    "orth_penalties",
    "orth_penalty",
    "project_disc",
    "reorthonormalize",
]

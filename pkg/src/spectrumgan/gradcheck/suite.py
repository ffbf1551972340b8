"""The gradient-check suite: every hand-derived gradient in the package.

Each check builds a small generic problem from its own random stream,
compares the analytic gradient with central differences and reports the
worst relative error.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from spectrumgan.gradcheck.finite_difference import (
    numerical_gradient,
    worst_error,
)
from spectrumgan.linalg import make_rng
from spectrumgan.linalg.rng import STREAM_GRADCHECK
from spectrumgan.optim.losses import (
    GenLossForm,
    disc_loss_ganlog,
    disc_loss_hinge,
    gen_loss_hinge,
    gen_loss_logd,
)
from spectrumgan.spectrum import (
    ControllerTag,
    build_controller,
    divergence_reg,
    dopt_reg,
    lipschitz_reg,
    regularizer_dispatch,
    singular_value_update,
)
from spectrumgan.svdnet import (
    DiscNet,
    SvdLayer,
    apply_singular_value_update,
    disc_backward,
    disc_forward,
    gen_backward,
    gen_forward,
    init_disc,
    init_gen,
    init_layer,
    layer_backward,
    layer_forward,
    orth_penalty,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-5
KINK_MARGIN = 0.05

Pairs = list[tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class GradientCheck:
    component: str
    run: Callable[[np.random.Generator], float]


@dataclass(frozen=True)
class CheckOutcome:
    component: str
    relative_error: float


@dataclass(frozen=True)
class SuiteReport:
    outcomes: tuple[CheckOutcome, ...]
    tolerance: float

    @property
    def failures(self) -> list[CheckOutcome]:
        return [
            outcome
            for outcome in self.outcomes
            if not outcome.relative_error <= self.tolerance
        ]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst(self) -> CheckOutcome:
        return max(self.outcomes, key=lambda outcome: outcome.relative_error)


def _generic_spectrum(rng: np.random.Generator, rank: int) -> np.ndarray:
    # distinct entries with a unique maximum
    e = rng.uniform(0.2, 0.8, size=rank)
    e[rng.integers(rank)] = 1.0
    return e


def _perturbed_layer(
    rng: np.random.Generator, d_in: int, d_out: int
) -> SvdLayer:
    layer = init_layer(d_in, d_out, rng)
    layer.u += 0.05 * rng.standard_normal(layer.u.shape)
    layer.v += 0.05 * rng.standard_normal(layer.v.shape)
    layer.e[...] = _generic_spectrum(rng, layer.rank)
    layer.bias[...] = rng.standard_normal(d_out)
    return layer


def _layer_check(tag: ControllerTag) -> GradientCheck:
    def run(rng: np.random.Generator) -> float:
        layer = _perturbed_layer(rng, 4, 3)
        controller = build_controller(tag)
        singular_value_update(layer, controller)
        h = rng.standard_normal((5, 4))
        upstream = rng.standard_normal((5, 3))

        def objective() -> float:
            out = layer_forward(layer, h, controller)
            return float(np.sum(out * upstream))

        objective()
        grads = layer_backward(layer, upstream, controller)
        pairs: Pairs = [
            (grads.h, numerical_gradient(objective, h)),
            (grads.u, numerical_gradient(objective, layer.u)),
            (grads.v, numerical_gradient(objective, layer.v)),
            (grads.bias, numerical_gradient(objective, layer.bias)),
        ]
        # e is pinned to 1 under the orthogonal controller
        if tag is not ControllerTag.ORTHOGONAL:
            pairs.append((grads.e, numerical_gradient(objective, layer.e)))
        return worst_error(pairs)

    return GradientCheck(component=f"layer[{tag}]", run=run)


def _check_orth_penalty(rng: np.random.Generator) -> float:
    layer = _perturbed_layer(rng, 5, 3)
    _, grad_u, grad_v = orth_penalty(layer)

    def objective() -> float:
        return orth_penalty(layer)[0]

    return worst_error(
        [
            (grad_u, numerical_gradient(objective, layer.u)),
            (grad_v, numerical_gradient(objective, layer.v)),
        ]
    )


def _perturbed_disc(
    rng: np.random.Generator, dims: list[int], low: float = 0.2
) -> DiscNet:
    net = init_disc(dims, int(rng.integers(2**31)))
    for layer in net.layers:
        layer.u += 0.05 * rng.standard_normal(layer.u.shape)
        layer.v += 0.05 * rng.standard_normal(layer.v.shape)
        layer.e[...] = rng.uniform(low, 0.9, size=layer.rank)
        layer.bias[...] = 0.1 * rng.standard_normal(layer.d_out)
    return net


def _disc_check(tag: ControllerTag) -> GradientCheck:
    def run(rng: np.random.Generator) -> float:
        net = _perturbed_disc(rng, [3, 4, 4, 1])
        controller = build_controller(tag)
        apply_singular_value_update(net, controller)
        x = rng.standard_normal((6, 3))
        upstream = rng.standard_normal(6)

        def objective() -> float:
            return float(disc_forward(net, x, controller) @ upstream)

        objective()
        grads = disc_backward(net, upstream, controller)
        pairs: Pairs = [(grads.inputs, numerical_gradient(objective, x))]
        for layer, layer_grads in zip(net.layers, grads.layers):
            pairs.extend(
                [
                    (layer_grads.u, numerical_gradient(objective, layer.u)),
                    (layer_grads.e, numerical_gradient(objective, layer.e)),
                    (layer_grads.v, numerical_gradient(objective, layer.v)),
                    (
                        layer_grads.bias,
                        numerical_gradient(objective, layer.bias),
                    ),
                ]
            )
        return worst_error(pairs)

    return GradientCheck(component=f"disc[{tag}]", run=run)


def _check_generator(rng: np.random.Generator) -> float:
    net = init_gen([2, 5, 4, 2], int(rng.integers(2**31)))
    for layer in net.layers:
        layer.bias[...] = 0.1 * rng.standard_normal(layer.d_out)
    z = rng.standard_normal((6, 2))
    upstream = rng.standard_normal((6, 2))

    def objective() -> float:
        return float(np.sum(gen_forward(net, z) * upstream))

    objective()
    grads = gen_backward(net, upstream)
    pairs: Pairs = [(grads.inputs, numerical_gradient(objective, z))]
    for layer, layer_grads in zip(net.layers, grads.layers):
        pairs.append(
            (layer_grads.weight, numerical_gradient(objective, layer.weight))
        )
        pairs.append(
            (layer_grads.bias, numerical_gradient(objective, layer.bias))
        )
    return worst_error(pairs)


def _check_lipschitz_reg(rng: np.random.Generator) -> float:
    e_max = rng.uniform(1.2, 2.0, size=3)
    _, grad = lipschitz_reg(e_max, 0.7)

    def objective() -> float:
        return lipschitz_reg(e_max, 0.7)[0]

    return worst_error([(grad, numerical_gradient(objective, e_max))])


def _check_dopt_reg(rng: np.random.Generator) -> float:
    e_lists = [rng.uniform(0.2, 1.0, size=rank) for rank in (3, 4)]
    _, grads = dopt_reg(e_lists, 0.5)
    return worst_error(
        [
            (grad, numerical_gradient(lambda: dopt_reg(e_lists, 0.5)[0], e))
            for grad, e in zip(grads, e_lists)
        ]
    )


def _spread_spectrum(rng: np.random.Generator, rank: int) -> np.ndarray:
    # gaps well above the floor and entries inside (0, 1)
    e = np.linspace(0.1, 0.9, rank) + rng.uniform(-0.02, 0.02, size=rank)
    return rng.permutation(e)


def _check_divergence_reg(rng: np.random.Generator) -> float:
    e_lists = [_spread_spectrum(rng, rank) for rank in (3, 5)]

    def objective() -> float:
        return divergence_reg(e_lists, 0.05, 0.5)[0]

    _, grads = divergence_reg(e_lists, 0.05, 0.5)
    return worst_error(
        [
            (grad, numerical_gradient(objective, e))
            for grad, e in zip(grads, e_lists)
        ]
    )


def _dispatch_check(tag: ControllerTag, low: float) -> GradientCheck:
    def run(rng: np.random.Generator) -> float:
        net = _perturbed_disc(rng, [3, 4, 4, 1], low=low)
        if tag is ControllerTag.DIVERGENCE_PLUS_SC:
            for layer in net.layers[:-1]:
                layer.e[...] = _spread_spectrum(rng, layer.rank)
        if tag is ControllerTag.LIPSCHITZ_REG:
            for layer in net.layers:
                layer.e += 1.0
        controller = build_controller(tag, gamma=0.3)

        def objective() -> float:
            return regularizer_dispatch(controller, net).value

        result = regularizer_dispatch(controller, net)
        return worst_error(
            [
                (grad, numerical_gradient(objective, layer.e))
                for grad, layer in zip(result.grads, net.layers)
            ]
        )

    return GradientCheck(component=f"regularizer[{tag}]", run=run)


def _away_from_kinks(rng: np.random.Generator, count: int) -> np.ndarray:
    logits = rng.uniform(-2.5, 2.5, size=count)
    near = np.abs(np.abs(logits) - 1.0) < KINK_MARGIN
    logits[near] += 4.0 * KINK_MARGIN
    return logits


def _check_ganlog(rng: np.random.Generator) -> float:
    real, fake = rng.standard_normal(5), rng.standard_normal(7)
    loss = disc_loss_ganlog(real, fake)

    def objective() -> float:
        return disc_loss_ganlog(real, fake).value

    return worst_error(
        [
            (loss.grad_real, numerical_gradient(objective, real)),
            (loss.grad_fake, numerical_gradient(objective, fake)),
        ]
    )


def _check_hinge(rng: np.random.Generator) -> float:
    real, fake = _away_from_kinks(rng, 5), _away_from_kinks(rng, 7)
    loss = disc_loss_hinge(real, fake)

    def objective() -> float:
        return disc_loss_hinge(real, fake).value

    return worst_error(
        [
            (loss.grad_real, numerical_gradient(objective, real)),
            (loss.grad_fake, numerical_gradient(objective, fake)),
        ]
    )


def _gen_logd_check(form: GenLossForm) -> GradientCheck:
    def run(rng: np.random.Generator) -> float:
        fake = rng.standard_normal(6)
        loss = gen_loss_logd(fake, form)
        numeric = numerical_gradient(
            lambda: gen_loss_logd(fake, form).value, fake
        )
        return worst_error([(loss.grad, numeric)])

    return GradientCheck(component=f"gen_loss[{form}]", run=run)


def _check_gen_hinge(rng: np.random.Generator) -> float:
    fake = rng.standard_normal(6)
    numeric = numerical_gradient(lambda: gen_loss_hinge(fake).value, fake)
    return worst_error([(gen_loss_hinge(fake).grad, numeric)])


def default_checks() -> list[GradientCheck]:
    return [
        *(_layer_check(tag) for tag in ControllerTag),
        GradientCheck("orth_penalty", _check_orth_penalty),
        _disc_check(ControllerTag.SPECTRAL_NORM_SVD),
        _disc_check(ControllerTag.POWER_ITER_SN),
        _disc_check(ControllerTag.SPECTRAL_CONSTRAINT),
        GradientCheck("generator", _check_generator),
        GradientCheck("lipschitz_reg", _check_lipschitz_reg),
        GradientCheck("dopt_reg", _check_dopt_reg),
        GradientCheck("divergence_reg", _check_divergence_reg),
        _dispatch_check(ControllerTag.LIPSCHITZ_REG, low=0.2),
        _dispatch_check(ControllerTag.DOPTIMAL_PLUS_SN, low=0.2),
        _dispatch_check(ControllerTag.DIVERGENCE_PLUS_SC, low=0.2),
        GradientCheck("disc_loss[gan_log]", _check_ganlog),
        GradientCheck("disc_loss[hinge]", _check_hinge),
        _gen_logd_check(GenLossForm.LOG),
        _gen_logd_check(GenLossForm.LITERAL),
        GradientCheck("gen_loss[hinge]", _check_gen_hinge),
    ]


def run_gradcheck_suite(
    seed: int = 0,
    checks: Sequence[GradientCheck] | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SuiteReport:
    checks = default_checks() if checks is None else list(checks)
    outcomes = []
    for index, check in enumerate(
        tqdm(checks, desc="Gradient checks", unit="check")
    ):
        rng = make_rng(seed, STREAM_GRADCHECK, index)
        error = check.run(rng)
        logger.info("%-28s rel. err %.3e", check.component, error)
        outcomes.append(
            CheckOutcome(component=check.component, relative_error=error)
        )
    return SuiteReport(outcomes=tuple(outcomes), tolerance=tolerance)

"""Alternating discriminator/generator training with spectrum control."""

from __future__ import annotations

import copy
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from tqdm import tqdm

from spectrumgan.errors import TrainingFault
from spectrumgan.evalsuite import (
    MetricRow,
    SpectrumReport,
    lipschitz_probe,
    mode_coverage,
    sample_ring,
    spectrum_report,
)
from spectrumgan.linalg import Mat, make_rng
from spectrumgan.linalg.rng import STREAM_DATA, STREAM_EVAL, STREAM_NOISE
from spectrumgan.optim.adam import AdamState, adam_step
from spectrumgan.optim.config import AdamSettings, TrainConfig
from spectrumgan.optim.losses import disc_loss, gen_loss
from spectrumgan.spectrum import (
    SpectrumController,
    build_controller,
    regularizer_dispatch,
)
from spectrumgan.svdnet import (
    Checkpoint,
    DiscNet,
    GenNet,
    apply_singular_value_update,
    disc_backward,
    disc_forward,
    disc_gradient_arrays,
    disc_parameters,
    gen_backward,
    gen_forward,
    gen_gradient_arrays,
    gen_parameters,
    init_disc,
    init_gen,
    max_orth_penalty,
    orth_penalty,
    project_disc,
)

logger = logging.getLogger(__name__)


class RunArtifactRepository(Protocol):
    def save_checkpoint(self, name: str, checkpoint: Checkpoint) -> None:
        raise NotImplementedError

    def append_metrics(self, row: MetricRow) -> None:
        raise NotImplementedError

    def save_spectra(self, report: SpectrumReport) -> None:
        raise NotImplementedError


@dataclass(eq=False)
class TrainingRun:
    """Mutable state of one run: networks, optimizers and data streams."""

    config: TrainConfig
    disc: DiscNet
    gen: GenNet
    controller: SpectrumController
    disc_adam: AdamState
    gen_adam: AdamState
    data_rng: np.random.Generator
    noise_rng: np.random.Generator
    iteration: int = 0


@dataclass(frozen=True)
class StepLosses:
    disc_loss: float
    gen_loss: float
    reg_value: float


@dataclass(frozen=True)
class TrainResult:
    run: TrainingRun
    metrics: tuple[MetricRow, ...] = field(default_factory=tuple)
    spectra: tuple[SpectrumReport, ...] = field(default_factory=tuple)


def _adam(settings: AdamSettings | None) -> AdamState:
    settings = settings or AdamSettings()
    return AdamState(
        lr=settings.lr,
        beta1=settings.beta1,
        beta2=settings.beta2,
        eps=settings.eps,
    )


def init_run(config: TrainConfig) -> TrainingRun:
    return TrainingRun(
        config=config,
        disc=init_disc(config.disc_dims, config.seed),
        gen=init_gen(config.gen_dims, config.seed),
        controller=build_controller(
            config.controller,
            gamma=config.gamma,
            ref_scale=config.ref_scale,
            seed=config.seed,
        ),
        disc_adam=_adam(config.disc_adam),
        gen_adam=_adam(config.gen_adam),
        data_rng=make_rng(config.seed, STREAM_DATA),
        noise_rng=make_rng(config.seed, STREAM_NOISE),
    )


def make_checkpoint(run: TrainingRun) -> Checkpoint:
    return Checkpoint(
        disc=copy.deepcopy(run.disc),
        gen=copy.deepcopy(run.gen),
        controller=copy.deepcopy(run.controller),
        iteration=run.iteration,
        seed=run.config.seed,
        rng_states={
            "data": run.data_rng.bit_generator.state,
            "noise": run.noise_rng.bit_generator.state,
        },
    )


def _check_finite(value: float, name: str, iteration: int) -> None:
    if not math.isfinite(value):
        raise TrainingFault(
            "non-finite loss", parameter=name, iteration=iteration
        )


def _latent(run: TrainingRun) -> Mat:
    return run.noise_rng.standard_normal(
        (run.config.batch_size, run.config.z_dim)
    )


def disc_step(run: TrainingRun) -> tuple[float, float]:
    """One descent step on ``-f + lambda * L_orth + gamma * R(E)``.

    Returns the adversarial value ``f`` and the weighted regularizer.
    """
    config, disc, controller = run.config, run.disc, run.controller
    ring = config.ring
    apply_singular_value_update(disc, controller)

    real = sample_ring(
        config.batch_size, ring.modes, ring.radius, ring.sigma, run.data_rng
    )
    fake = gen_forward(run.gen, _latent(run))
    logits = disc_forward(disc, np.vstack([real, fake]), controller)
    batch = config.batch_size
    loss = disc_loss(config.loss_family, logits[:batch], logits[batch:])
    _check_finite(loss.value, "disc_loss", run.iteration)

    grads = disc_backward(
        disc,
        -np.concatenate([loss.grad_real, loss.grad_fake]),
        controller,
    )
    arrays = disc_gradient_arrays(grads)
    for index, layer in enumerate(disc.layers):
        _, grad_u, grad_v = orth_penalty(layer)
        arrays[f"layer{index}.u"] = (
            arrays[f"layer{index}.u"] + config.lambda_orth * grad_u
        )
        arrays[f"layer{index}.v"] = (
            arrays[f"layer{index}.v"] + config.lambda_orth * grad_v
        )
    reg = regularizer_dispatch(controller, disc)
    for index, grad_e in enumerate(reg.grads):
        arrays[f"layer{index}.e"] = arrays[f"layer{index}.e"] + grad_e

    adam_step(
        disc_parameters(disc), arrays, run.disc_adam, iteration=run.iteration
    )
    project_disc(disc, controller)
    return loss.value, reg.value


def gen_step(run: TrainingRun) -> float:
    """Generator descent; reuses the singular values of the last D step."""
    config = run.config
    logits = disc_forward(
        run.disc, gen_forward(run.gen, _latent(run)), run.controller
    )
    loss = gen_loss(config.loss_family, logits, config.gen_loss_form)
    _check_finite(loss.value, "gen_loss", run.iteration)
    through_disc = disc_backward(run.disc, loss.grad, run.controller)
    grads = gen_backward(run.gen, through_disc.inputs)
    adam_step(
        gen_parameters(run.gen),
        gen_gradient_arrays(grads),
        run.gen_adam,
        iteration=run.iteration,
    )
    return loss.value


def train_iteration(run: TrainingRun) -> StepLosses:
    run.iteration += 1
    n_dis = run.config.n_dis or 1
    d_value = reg_value = 0.0
    for _ in range(n_dis):
        d_value, reg_value = disc_step(run)
    g_value = gen_step(run)
    return StepLosses(
        disc_loss=d_value, gen_loss=g_value, reg_value=reg_value
    )


def evaluate(run: TrainingRun, losses: StepLosses) -> MetricRow:
    """Metrics on a snapshot; draws only from the evaluation stream."""
    config, ring = run.config, run.config.ring
    rng = make_rng(config.seed, STREAM_EVAL, run.iteration)
    samples = gen_forward(
        copy.deepcopy(run.gen),
        rng.standard_normal((config.eval_samples, config.z_dim)),
    )
    covered, hq_fraction = mode_coverage(samples, ring.centers, ring.sigma)
    anchors = sample_ring(
        config.eval_samples, ring.modes, ring.radius, ring.sigma, rng
    )
    probe = lipschitz_probe(
        run.disc,
        run.controller,
        config.lip_pairs,
        config.seed,
        anchors=anchors,
    )
    return MetricRow(
        iter=run.iteration,
        modes_covered=covered,
        hq_fraction=hq_fraction,
        lip_empirical=probe.empirical_max_ratio,
        lip_bound=probe.product_bound,
        orth_penalty_max=max_orth_penalty(run.disc),
        reg_value=losses.reg_value,
        disc_loss=losses.disc_loss,
        gen_loss=losses.gen_loss,
    )


def train(
    config: TrainConfig, repository: RunArtifactRepository | None = None
) -> TrainResult:
    run = init_run(config)
    logger.info(
        "Training controller=%s loss=%s iterations=%d n_dis=%s seed=%d",
        config.controller,
        config.loss_family,
        config.iterations,
        config.n_dis,
        config.seed,
    )
    metrics: list[MetricRow] = []
    spectra: list[SpectrumReport] = []
    started = last_mark = time.perf_counter()
    last_iteration = 0

    try:
        for iteration in tqdm(
            range(1, config.iterations + 1), desc="Training", unit="it"
        ):
            losses = train_iteration(run)
            if (
                iteration % config.eval_interval
                and iteration != config.iterations
            ):
                continue
            row = evaluate(run, losses)
            report = spectrum_report(run.disc, run.controller, iteration)
            metrics.append(row)
            spectra.append(report)
            if repository is not None:
                repository.append_metrics(row)
                repository.save_spectra(report)

            now = time.perf_counter()
            per_thousand = (
                (now - last_mark) * 1000.0 / (iteration - last_iteration)
            )
            last_mark, last_iteration = now, iteration
            logger.info(
                "iter=%d d_loss=%.4f g_loss=%.4f modes=%d hq=%.3f "
                "orth=%.2e (%.2fs per 1000 it)",
                iteration,
                row.disc_loss,
                row.gen_loss,
                row.modes_covered,
                row.hq_fraction,
                row.orth_penalty_max,
                per_thousand,
            )
    except TrainingFault as exc:
        logger.error("Training aborted: %s", exc)
        if repository is not None:
            repository.save_checkpoint("last_good", make_checkpoint(run))
        raise

    if repository is not None:
        repository.save_checkpoint("checkpoint", make_checkpoint(run))
    logger.info(
        "Finished %d iterations in %.1fs",
        run.iteration,
        time.perf_counter() - started,
    )
    return TrainResult(
        run=run, metrics=tuple(metrics), spectra=tuple(spectra)
    )

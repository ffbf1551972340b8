import copy
import math

import numpy as np
import pytest

from spectrumgan.errors import TrainingFault
from spectrumgan.evalsuite import sample_ring
from spectrumgan.optim import (
    AdamSettings,
    TrainConfig,
    disc_step,
    init_run,
    train,
    train_iteration,
)
from spectrumgan.optim.losses import disc_loss
from spectrumgan.spectrum import regularizer_dispatch
from spectrumgan.svdnet import (
    apply_singular_value_update,
    disc_forward,
    gen_forward,
    init_disc,
    init_gen,
    orth_penalties,
)


class RecordingRepository:
    def __init__(self):
        self.checkpoints = {}
        self.metrics = []
        self.spectra = []

    def save_checkpoint(self, name, checkpoint):
        self.checkpoints[name] = checkpoint

    def append_metrics(self, row):
        self.metrics.append(row)

    def save_spectra(self, report):
        self.spectra.append(report)


def small_config(**overrides):
    settings = {
        "iterations": 4,
        "batch_size": 16,
        "disc_hidden": (8, 8),
        "gen_hidden": (8,),
        "eval_interval": 2,
        "eval_samples": 64,
        "lip_pairs": 64,
        "seed": 3,
    }
    settings.update(overrides)
    return TrainConfig(**settings)


def disc_objective(run, data_rng, noise_rng):
    """``f - lambda * L_orth - R`` on the batch the next D step draws."""
    config, ring = run.config, run.config.ring
    disc, controller = copy.deepcopy(run.disc), copy.deepcopy(run.controller)
    apply_singular_value_update(disc, controller)
    real = sample_ring(
        config.batch_size, ring.modes, ring.radius, ring.sigma, data_rng
    )
    z = noise_rng.standard_normal((config.batch_size, config.z_dim))
    fake = gen_forward(copy.deepcopy(run.gen), z)
    logits = disc_forward(disc, np.vstack([real, fake]), controller)
    batch = config.batch_size
    value = disc_loss(
        config.loss_family, logits[:batch], logits[batch:]
    ).value
    orth = sum(sum(orth_penalties(layer)) for layer in disc.layers)
    reg = regularizer_dispatch(controller, disc).value
    return value - config.lambda_orth * orth - reg


def test_zero_iterations_is_the_initial_network():
    repository = RecordingRepository()
    config = small_config(iterations=0)
    result = train(config, repository)

    assert result.metrics == ()
    assert result.run.iteration == 0
    initial_disc = init_disc(config.disc_dims, config.seed)
    for trained, initial in zip(result.run.disc.layers, initial_disc.layers):
        np.testing.assert_array_equal(trained.u, initial.u)
        np.testing.assert_array_equal(trained.e, initial.e)
        np.testing.assert_array_equal(trained.v, initial.v)
        np.testing.assert_array_equal(trained.bias, initial.bias)
    initial_gen = init_gen(config.gen_dims, config.seed)
    for trained, initial in zip(result.run.gen.layers, initial_gen.layers):
        np.testing.assert_array_equal(trained.weight, initial.weight)
    assert set(repository.checkpoints) == {"checkpoint"}


def test_metrics_are_recorded_at_interval_and_final_iteration():
    repository = RecordingRepository()
    result = train(small_config(iterations=5, eval_interval=2), repository)
    assert [row.iter for row in result.metrics] == [2, 4, 5]
    assert [report.iteration for report in repository.spectra] == [2, 4, 5]
    assert repository.metrics == list(result.metrics)
    assert repository.checkpoints["checkpoint"].iteration == 5


def test_same_seed_gives_identical_metric_rows():
    first = train(small_config(controller="lipschitz"))
    second = train(small_config(controller="lipschitz"))
    assert first.metrics == second.metrics
    for a, b in zip(first.run.disc.layers, second.run.disc.layers):
        np.testing.assert_array_equal(a.u, b.u)
        np.testing.assert_array_equal(a.e, b.e)


def test_different_seed_changes_the_run():
    first = train(small_config(seed=1, iterations=2))
    second = train(small_config(seed=2, iterations=2))
    assert first.metrics != second.metrics


def test_orthogonal_controller_keeps_unit_spectrum():
    config = small_config(
        controller="orthogonal",
        iterations=200,
        eval_interval=200,
        batch_size=32,
    )
    result = train(config)
    for layer in result.run.disc.layers:
        np.testing.assert_array_equal(layer.e, np.ones(layer.rank))
        assert max(orth_penalties(layer)) <= 1e-3
    assert result.metrics[-1].lip_bound == 1.0


@pytest.mark.parametrize("controller", ["constraint", "divergence"])
def test_clipping_controllers_stay_in_unit_box(controller):
    run = init_run(
        small_config(
            controller=controller,
            disc_hidden=(6, 6),
            disc_adam=AdamSettings(lr=0.05),
        )
    )
    for _ in range(15):
        train_iteration(run)
        for layer in run.disc.layers:
            assert np.all(layer.e >= 0.0) and np.all(layer.e <= 1.0)


def test_power_iteration_run_tracks_every_layer():
    result = train(small_config(controller="power-iter", iterations=3))
    controller = result.run.controller
    assert sorted(controller.power_state) == [0, 1, 2]
    for row in result.metrics:
        assert math.isfinite(row.disc_loss)
        assert math.isfinite(row.lip_bound)


def test_hinge_family_runs_several_disc_steps():
    result = train(small_config(loss_family="hinge", iterations=2))
    assert result.run.disc_adam.t == 2 * 5
    assert result.run.gen_adam.t == 2


def test_non_finite_data_saves_last_good_checkpoint(monkeypatch):
    def poisoned_ring(count, *args):
        return np.full((count, 2), np.nan)

    monkeypatch.setattr(
        "spectrumgan.optim.training.sample_ring", poisoned_ring
    )
    repository = RecordingRepository()
    with pytest.raises(TrainingFault):
        train(small_config(), repository)
    saved = repository.checkpoints["last_good"]
    assert "checkpoint" not in repository.checkpoints
    for layer in saved.disc.layers:
        assert np.all(np.isfinite(layer.u))
        assert np.all(np.isfinite(layer.e))


def test_small_disc_step_does_not_decrease_objective():
    increases = 0
    trials = 20
    for seed in range(trials):
        run = init_run(
            small_config(
                seed=seed,
                controller="constraint",
                disc_adam=AdamSettings(lr=1e-5),
                batch_size=32,
            )
        )
        data_state = copy.deepcopy(run.data_rng)
        noise_state = copy.deepcopy(run.noise_rng)
        before = disc_objective(
            run, copy.deepcopy(data_state), copy.deepcopy(noise_state)
        )
        disc_step(run)
        after = disc_objective(run, data_state, noise_state)
        if after >= before:
            increases += 1
    assert increases >= 19

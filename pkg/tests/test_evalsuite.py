import math

import numpy as np
import pytest

from spectrumgan.errors import DomainError, RejectedInputError
from spectrumgan.evalsuite import (
    GenBoundInput,
    MetricRow,
    RingSpec,
    excess_gen_bound,
    fidelity_report,
    layer_spectrum,
    lipschitz_probe,
    log_covering_number,
    mode_coverage,
    product_bound,
    ring_centers,
    sample_ring,
    spectrum_report,
)
from spectrumgan.evalsuite.metrics import METRIC_FIELDS
from spectrumgan.linalg import make_rng
from spectrumgan.spectrum import ControllerTag, build_controller
from spectrumgan.svdnet import (
    DiscNet,
    SvdLayer,
    apply_singular_value_update,
    init_disc,
    reorthonormalize,
)


def perturbed_disc(dims, seed):
    rng = make_rng(seed, 42)
    net = init_disc(dims, seed)
    for layer in net.layers:
        layer.e[...] = rng.uniform(0.3, 1.8, size=layer.rank)
        layer.bias[...] = 0.2 * rng.standard_normal(layer.d_out)
        layer.u += 0.05 * rng.standard_normal(layer.u.shape)
        layer.v += 0.05 * rng.standard_normal(layer.v.shape)
    return net


def test_ring_centers_lie_on_the_circle():
    centers = ring_centers(8, 2.0)
    np.testing.assert_allclose(np.linalg.norm(centers, axis=1), 2.0)
    np.testing.assert_allclose(centers[0], [2.0, 0.0])


def test_sample_ring_zero_sigma_hits_centers():
    samples = sample_ring(500, 8, 2.0, 0.0, seed=1)
    centers = ring_centers(8, 2.0)
    distances = np.linalg.norm(
        samples[:, None, :] - centers[None, :, :], axis=2
    )
    assert distances.min(axis=1).max() <= 1e-9


def test_sample_ring_mean_is_near_origin():
    count = 100_000
    samples = sample_ring(count, 8, 2.0, 0.02, seed=5)
    assert np.linalg.norm(samples.mean(axis=0)) <= 4 * 2.0 / math.sqrt(count)


def test_sample_ring_is_deterministic_per_seed():
    np.testing.assert_array_equal(
        sample_ring(64, 8, 2.0, 0.02, seed=9),
        sample_ring(64, 8, 2.0, 0.02, seed=9),
    )


def test_ring_spec_rejects_bad_values():
    with pytest.raises(RejectedInputError):
        RingSpec(modes=0)
    with pytest.raises(RejectedInputError):
        RingSpec(sigma=-0.1)


def test_mode_coverage_examples():
    centers = ring_centers(8, 2.0)
    assert mode_coverage(centers.copy(), centers, 0.02) == (8, 1.0)

    far = np.zeros((10, 2))
    assert mode_coverage(far, centers, 0.02) == (0, 0.0)

    sigma = 0.02
    at_center = np.repeat(centers[:1], 50, axis=0)
    away = at_center + np.array([10 * sigma, 0.0])
    covered, hq = mode_coverage(np.vstack([at_center, away]), centers, sigma)
    assert covered == 1
    assert hq == pytest.approx(0.5)


def test_mode_coverage_needs_samples():
    with pytest.raises(RejectedInputError):
        mode_coverage(np.zeros((0, 2)), ring_centers(8, 2.0), 0.02)


def test_spectrum_report_of_fresh_network_has_no_decay():
    net = init_disc([2, 8, 8, 1], seed=0)
    report = spectrum_report(net, build_controller("sn-svd"), iteration=0)
    assert report.decay_areas == [1.0, 1.0, 1.0]
    assert report.layers[1].normalized_ranks[-1] == 1.0


def test_layer_spectrum_decay_area_example():
    spectrum = layer_spectrum(np.array([0.25, 1.0, 0.5]))
    np.testing.assert_array_equal(spectrum.values, [1.0, 0.5, 0.25])
    assert spectrum.decay_area == pytest.approx(1.75 / 3)
    np.testing.assert_allclose(spectrum.normalized_ranks, [1 / 3, 2 / 3, 1])


def test_spectrum_report_agrees_with_fidelity():
    controller = build_controller("sn-svd")
    net = perturbed_disc([4, 6, 5, 1], seed=2)
    reorthonormalize(net)
    report = spectrum_report(net, controller, iteration=3)
    fidelity = fidelity_report(net, controller)
    for layer, item in zip(report.layers, fidelity):
        np.testing.assert_allclose(layer.values, item.realized, atol=1e-6)
        assert item.max_deviation <= 5e-3
    assert report.layers[0].values[0] == 1.0


def test_fidelity_rows_carry_orthogonality():
    controller = build_controller("lipschitz")
    net = perturbed_disc([3, 4, 1], seed=1)
    rows = [item.as_row() for item in fidelity_report(net, controller)]
    assert [row["layer"] for row in rows] == [0, 1]
    assert rows[0]["orth_u"] > 0.0


def test_lipschitz_probe_single_identity_layer():
    net = DiscNet(
        layers=[
            SvdLayer(
                u=np.eye(1), e=np.ones(1), v=np.eye(1), bias=np.zeros(1)
            )
        ]
    )
    probe = lipschitz_probe(net, build_controller("lipschitz"), 500, seed=0)
    assert probe.product_bound == 1.0
    assert probe.empirical_max_ratio == pytest.approx(1.0)


@pytest.mark.parametrize("tag", [tag.value for tag in ControllerTag])
def test_lipschitz_probe_respects_product_bound(tag):
    for seed in range(20):
        controller = build_controller(tag, seed=seed)
        net = perturbed_disc([2, 8, 8, 1], seed=seed)
        reorthonormalize(net)
        apply_singular_value_update(net, controller)
        probe = lipschitz_probe(net, controller, 10_000, seed=seed)
        assert probe.empirical_max_ratio <= probe.product_bound + 1e-9


def test_lipschitz_probe_with_data_anchors():
    controller = build_controller("lipschitz")
    net = perturbed_disc([2, 6, 1], seed=6)
    reorthonormalize(net)
    anchors = sample_ring(200, 8, 2.0, 0.02, seed=3)
    probe = lipschitz_probe(net, controller, 500, seed=2, anchors=anchors)
    assert 0.0 < probe.empirical_max_ratio <= probe.product_bound + 1e-9


def test_product_bound_doubles_with_one_layer():
    controller = build_controller("lipschitz")
    net = perturbed_disc([3, 5, 1], seed=8)
    before = product_bound(net, controller)
    net.layers[0].e *= 2.0
    assert product_bound(net, controller) == pytest.approx(2.0 * before)


def test_lipschitz_probe_rejections():
    net = init_disc([2, 4, 1], seed=0)
    controller = build_controller("sn-svd")
    with pytest.raises(RejectedInputError):
        lipschitz_probe(net, controller, 0)
    with pytest.raises(RejectedInputError):
        lipschitz_probe(net, controller, 10, anchors=np.zeros((5, 3)))


def test_excess_gen_bound_example():
    inp = GenBoundInput(n=10_000, d=4, depth=2, b_x=1.0, b_w=(1.0, 1.0))
    assert inp.spectrum_constrained
    assert inp.beta == 1.0
    assert excess_gen_bound(inp) == pytest.approx(7.204, abs=1e-3)


def test_excess_gen_bound_monotonicity():
    base = dict(n=10_000, d=4, depth=2, b_x=1.0, b_w=(1.0, 1.0))
    value = excess_gen_bound(GenBoundInput(**base))
    assert excess_gen_bound(GenBoundInput(**{**base, "n": 40_000})) < value
    assert excess_gen_bound(
        GenBoundInput(**{**base, "b_w": (2.0, 1.0)})
    ) > value
    assert excess_gen_bound(GenBoundInput(**{**base, "d": 5})) > value
    assert excess_gen_bound(GenBoundInput(**{**base, "delta": 0.5})) < value
    assert excess_gen_bound(
        GenBoundInput(**{**base, "epsilon": 0.1})
    ) == pytest.approx(value + 0.1)


def scripted_bound(n, d, depth, b_x, b_w, rho, delta, epsilon):
    beta = b_x * np.prod(b_w)
    log_arg = 2 * np.sqrt(d * n) * depth * beta
    complexity = np.sqrt(d**2 * depth * np.log(log_arg))
    return (
        16 * rho / n
        + 48 * rho * beta * complexity / np.sqrt(n)
        + 12 * rho * beta * np.sqrt(np.log(1 / delta) / n)
        + epsilon
    )


def random_bound_inputs(count, seed):
    rng = make_rng(seed)
    for _ in range(count):
        depth = int(rng.integers(1, 5))
        yield dict(
            n=int(rng.integers(100, 1_000_000)),
            d=int(rng.integers(1, 9)),
            depth=depth,
            b_x=float(rng.uniform(0.8, 2.0)),
            b_w=tuple(rng.uniform(0.8, 2.0, size=depth)),
            rho_phi=float(rng.uniform(0.5, 2.0)),
            delta=float(rng.uniform(0.01, 0.9)),
            epsilon=float(rng.uniform(0.0, 1.0)),
        )


def test_excess_gen_bound_matches_scripted_closed_form():
    for kwargs in random_bound_inputs(100, seed=21):
        expected = scripted_bound(
            kwargs["n"],
            kwargs["d"],
            kwargs["depth"],
            kwargs["b_x"],
            kwargs["b_w"],
            kwargs["rho_phi"],
            kwargs["delta"],
            kwargs["epsilon"],
        )
        actual = excess_gen_bound(GenBoundInput(**kwargs))
        assert actual == pytest.approx(expected, rel=1e-10)


def test_excess_gen_bound_grows_with_each_layer_bound():
    for kwargs in random_bound_inputs(50, seed=22):
        value = excess_gen_bound(GenBoundInput(**kwargs))
        for i in range(kwargs["depth"]):
            b_w = list(kwargs["b_w"])
            b_w[i] *= 1.1
            larger = GenBoundInput(**{**kwargs, "b_w": tuple(b_w)})
            assert excess_gen_bound(larger) > value
        quadrupled = GenBoundInput(**{**kwargs, "n": 4 * kwargs["n"]})
        assert excess_gen_bound(quadrupled) < value


def test_gen_bound_beta_doubles_with_one_layer_bound():
    inp = GenBoundInput(n=100, d=4, depth=3, b_x=1.5, b_w=(1.0, 2.0, 0.5))
    doubled = GenBoundInput(n=100, d=4, depth=3, b_x=1.5, b_w=(2.0, 2.0, 0.5))
    assert doubled.beta == pytest.approx(2.0 * inp.beta)
    assert not inp.spectrum_constrained


@pytest.mark.parametrize(
    "overrides",
    [
        {"delta": 1.0},
        {"delta": 0.0},
        {"b_w": (1.0,)},
        {"b_x": 0.0},
        {"n": 0},
    ],
)
def test_gen_bound_input_rejections(overrides):
    base = dict(n=10, d=4, depth=2, b_x=1.0, b_w=(1.0, 1.0))
    with pytest.raises(DomainError):
        GenBoundInput(**{**base, **overrides})


def test_gen_bound_small_log_argument():
    inp = GenBoundInput(n=1, d=1, depth=1, b_x=0.1, b_w=(1.0,))
    with pytest.raises(DomainError):
        excess_gen_bound(inp)


def test_log_covering_number_examples():
    assert log_covering_number(4, 2, 1.0, 1.0) == pytest.approx(
        32 * math.log(5.0)
    )
    assert log_covering_number(4, 2, 0.0, 1.0) == 0.0
    assert log_covering_number(4, 2, 1.0, 2.0) < log_covering_number(
        4, 2, 1.0, 1.0
    )
    with pytest.raises(DomainError):
        log_covering_number(4, 2, 1.0, 0.0)


def test_metric_row_field_order():
    row = MetricRow(
        iter=1,
        modes_covered=8,
        hq_fraction=0.9,
        lip_empirical=0.5,
        lip_bound=1.0,
        orth_penalty_max=0.0,
        reg_value=0.0,
        disc_loss=-1.3,
        gen_loss=0.7,
    )
    assert tuple(row.as_row()) == METRIC_FIELDS

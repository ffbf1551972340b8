import math

import numpy as np
import pytest

from spectrumgan.errors import (
    DomainError,
    RejectedInputError,
    StateError,
    ZeroSpectrumError,
)
from spectrumgan.linalg import jacobi_svd, make_rng
from spectrumgan.spectrum import (
    ControllerTag,
    build_controller,
    default_gamma,
    diagonal_vjp,
    divergence_reg,
    dopt_reg,
    effective_diagonal,
    lipschitz_reg,
    power_vectors,
    project_clip,
    project_onto_constraint,
    reference_density,
    regularizer_dispatch,
    sample_reference_spectrum,
    singular_value_update,
)
from spectrumgan.svdnet import SvdLayer, init_disc, init_layer


def diagonal_layer(e):
    e = np.asarray(e, dtype=np.float64)
    size = e.shape[0]
    return SvdLayer(
        u=np.eye(size), e=e.copy(), v=np.eye(size), bias=np.zeros(size)
    )


def test_project_clip_examples():
    np.testing.assert_array_equal(
        project_clip(np.array([-1.0, 0.5, 2.0])), [0.0, 0.5, 1.0]
    )
    np.testing.assert_array_equal(
        project_clip(np.array([-3.0, -0.1])), [0.0, 0.0]
    )


def test_project_clip_is_idempotent():
    e = make_rng(3).uniform(-2.0, 2.0, size=1_000_000)
    once = project_clip(e)
    np.testing.assert_array_equal(project_clip(once), once)


def test_constraint_update_clips_stored_values():
    layer = diagonal_layer([-0.5, 0.3, 1.7])
    singular_value_update(layer, build_controller("constraint"))
    np.testing.assert_array_equal(layer.e, [0.0, 0.3, 1.0])


def test_constraint_update_keeps_feasible_values():
    layer = diagonal_layer([0.0, 0.25, 1.0])
    singular_value_update(layer, build_controller("divergence"))
    np.testing.assert_array_equal(layer.e, [0.0, 0.25, 1.0])


def test_normalization_leaves_stored_values():
    layer = diagonal_layer([2.0, 1.0, 0.5])
    controller = build_controller("sn-svd")
    singular_value_update(layer, controller)
    np.testing.assert_array_equal(layer.e, [2.0, 1.0, 0.5])
    np.testing.assert_allclose(
        effective_diagonal(layer, controller), [1.0, 0.5, 0.25]
    )


def test_normalization_of_zero_spectrum():
    layer = diagonal_layer([0.0, 1e-13])
    with pytest.raises(ZeroSpectrumError):
        singular_value_update(layer, build_controller("sn-svd"))


def test_orthogonal_update_resets_to_ones():
    layer = diagonal_layer([0.2, 3.0])
    controller = build_controller("orthogonal")
    singular_value_update(layer, controller)
    np.testing.assert_array_equal(layer.e, [1.0, 1.0])
    layer.e[...] = [0.5, 0.7]
    project_onto_constraint(layer, controller)
    np.testing.assert_array_equal(layer.e, [1.0, 1.0])
    assert not diagonal_vjp(layer, controller, np.ones(2)).any()


def test_lipschitz_update_is_a_no_op():
    layer = diagonal_layer([4.0, -1.0])
    singular_value_update(layer, build_controller("lipschitz"))
    np.testing.assert_array_equal(layer.e, [4.0, -1.0])


def test_power_update_populates_state_and_tracks_top_value():
    controller = build_controller("power-iter", seed=4)
    layer = init_layer(5, 3, make_rng(1))
    layer.e[...] = [2.0, 0.5, 0.25]
    with pytest.raises(StateError):
        power_vectors(controller, 0)
    for _ in range(60):
        singular_value_update(layer, controller, 0)
    vectors = power_vectors(controller, 0)
    assert vectors.u.shape == (5,) and vectors.v.shape == (3,)
    np.testing.assert_array_equal(layer.e, [2.0, 0.5, 0.25])
    effective = effective_diagonal(layer, controller, 0)
    np.testing.assert_allclose(effective, [1.0, 0.25, 0.125], atol=1e-8)


def test_normalized_vjp_matches_finite_difference():
    layer = diagonal_layer([0.4, 1.3, 0.9])
    controller = build_controller("sn-svd")
    weights = np.array([0.7, -1.1, 2.0])
    pulled = diagonal_vjp(layer, controller, weights)
    step = 1e-6
    for k in range(3):
        base = layer.e.copy()
        layer.e[k] += step
        up = float(weights @ effective_diagonal(layer, controller))
        layer.e[k] -= 2 * step
        down = float(weights @ effective_diagonal(layer, controller))
        layer.e[...] = base
        assert pulled[k] == pytest.approx((up - down) / (2 * step))


def test_lipschitz_reg_examples():
    value, grads = lipschitz_reg(np.ones(3), 1.0)
    assert value == 0.0
    assert not grads.any()

    value, grads = lipschitz_reg(np.array([2.0, 1.0]), 1.0)
    assert value == pytest.approx(math.log(2.0))
    np.testing.assert_allclose(grads, [0.5, 1.0])

    value, grads = lipschitz_reg(np.array([0.5, 1.5]), 1.0)
    assert value == 0.0
    assert not grads.any()


def test_lipschitz_reg_rejects_nonpositive():
    with pytest.raises(DomainError):
        lipschitz_reg(np.array([1.0, 0.0]), 1.0)


def test_dopt_reg_examples():
    value, _ = dopt_reg([np.ones(3)], 1.0)
    assert value == 0.0

    value, grads = dopt_reg([np.array([0.5, 0.25])], 1.0)
    assert value == pytest.approx(math.log(8.0))
    np.testing.assert_allclose(grads[0], [-2.0, -4.0])


def test_dopt_reg_scales_with_gamma():
    value, grads = dopt_reg([np.array([0.5, 0.25])], 0.5)
    assert value == pytest.approx(0.5 * math.log(8.0))
    np.testing.assert_allclose(grads[0], [-1.0, -2.0])


def test_reference_density_examples():
    assert reference_density(1.0, 0.5) == pytest.approx(1.59577, rel=1e-5)
    assert reference_density(0.0, 0.5) == pytest.approx(0.21596, rel=1e-4)


@pytest.mark.parametrize("y,a", [(-0.1, 0.5), (1.1, 0.5), (0.5, 0.0)])
def test_reference_density_domain(y, a):
    with pytest.raises(DomainError):
        reference_density(y, a)


def test_reference_spectrum_is_sorted_in_unit_interval():
    spectrum = sample_reference_spectrum(256, 0.5, seed=1)
    assert spectrum.values.shape == (256,)
    assert np.all(np.diff(spectrum.values) <= 0)
    assert spectrum.values.min() >= 0.0 and spectrum.values.max() <= 1.0
    assert spectrum.normalized_ranks[-1] == 1.0


def test_divergence_reg_hand_example():
    value, grads = divergence_reg([np.array([0.2, 0.5, 0.9])], 1.0, 0.5)
    assert value == pytest.approx(0.789625, abs=1e-5)
    assert grads[0].shape == (3,)


def test_divergence_reg_is_permutation_invariant():
    value, grads = divergence_reg([np.array([0.2, 0.5, 0.9])], 1.0, 0.5)
    shuffled, shuffled_grads = divergence_reg(
        [np.array([0.9, 0.2, 0.5])], 1.0, 0.5
    )
    assert shuffled == pytest.approx(value)
    np.testing.assert_allclose(shuffled_grads[0], grads[0][[2, 0, 1]])


def test_divergence_reg_matched_discretization():
    # every term is -log(2 * gap * p(e_k)); chosen so each product is 0.5
    a = 0.5
    e = [0.2]
    for _ in range(2):
        e.append(e[-1] + 0.25 / reference_density(e[-1], a))
    assert e[-1] <= 1.0
    value, _ = divergence_reg([np.array(e)], 1.0, a)
    assert value == pytest.approx(math.log(2.0))


def test_divergence_reg_rejections():
    with pytest.raises(RejectedInputError):
        divergence_reg([np.array([0.5])], 1.0, 0.5)
    with pytest.raises(DomainError):
        divergence_reg([np.array([0.5, 1.2])], 1.0, 0.5)


def test_dispatch_orthogonal_is_zero():
    net = init_disc([3, 4, 1], seed=0)
    result = regularizer_dispatch(build_controller("orthogonal"), net)
    assert result.value == 0.0
    assert all(not grad.any() for grad in result.grads)


def test_dispatch_dopt_on_fresh_net_is_zero():
    net = init_disc([4, 4, 4, 1], seed=2)
    result = regularizer_dispatch(build_controller("dopt-sn"), net)
    assert result.value == 0.0


def test_dispatch_lipschitz_routes_to_layer_maxima():
    net = init_disc([2, 2, 1], seed=0)
    net.layers[0].e[...] = [0.5, 2.0]
    net.layers[1].e[...] = [1.5]
    result = regularizer_dispatch(build_controller("lipschitz"), net)
    assert result.value == pytest.approx(math.log(3.0))
    np.testing.assert_allclose(result.grads[0], [0.0, 0.5])
    np.testing.assert_allclose(result.grads[1], [1.0 / 1.5])


def test_dispatch_divergence_skips_last_layer():
    controller = build_controller("divergence")
    net = init_disc([3, 3, 3, 1], seed=1)
    net.layers[0].e[...] = [0.2, 0.5, 0.9]
    net.layers[1].e[...] = [0.1, 0.6, 0.8]
    expected, grads = divergence_reg(
        [net.layers[0].e, net.layers[1].e], controller.gamma, 0.5
    )
    result = regularizer_dispatch(controller, net)
    assert result.value == pytest.approx(expected)
    np.testing.assert_allclose(result.grads[0], grads[0])
    np.testing.assert_allclose(result.grads[1], grads[1])
    assert not result.grads[2].any()


def test_build_controller_defaults_and_rejections():
    assert build_controller("divergence").gamma == 0.05
    assert default_gamma(ControllerTag.DIVERGENCE_PLUS_SC) == 0.05
    assert build_controller("lipschitz").gamma == 1.0
    with pytest.raises(RejectedInputError):
        build_controller("frobenius")
    with pytest.raises(RejectedInputError):
        build_controller("sn-svd", gamma=-1.0)


def test_controller_spectrum_bounds():
    assert ControllerTag.ORTHOGONAL.bounds_spectrum
    assert ControllerTag.SPECTRAL_CONSTRAINT.bounds_spectrum
    assert not ControllerTag.LIPSCHITZ_REG.bounds_spectrum


def test_realized_spectrum_of_clipped_layer():
    layer = init_layer(4, 4, make_rng(2))
    layer.e[...] = [1.4, 0.3, -0.2, 0.8]
    singular_value_update(layer, build_controller("constraint"))
    weight = (layer.u * layer.e) @ layer.v.T
    _, s, _ = jacobi_svd(weight)
    np.testing.assert_allclose(s, [1.0, 0.8, 0.3, 0.0], atol=1e-10)

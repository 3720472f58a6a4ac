"""Smoke tests for the python bindings."""

import math

import pytest

import linseplab as ll


def test_bound_values():
    assert ll.nonzero_update_cap(1.0, 0.5, 1.0, 2, 0.5, 0.5) == pytest.approx(22.9282032302755, rel=1e-12)
    assert ll.lower_bound(2.0, 0.5, 1.0, 2, 0.5, 0.5) == pytest.approx(4.0)
    assert ll.compression_bound(10, 3000, 0.05, 0.0) == pytest.approx(0.29338932909878, rel=1e-12)
    k_fail, k_succeed = ll.relu_thresholds(32, 0.05)
    assert k_succeed == pytest.approx(math.log2(1280))
    assert ll.relu_iteration_bound(32, 1.0, 0.5) == 64
    with pytest.raises(Exception):
        ll.nonzero_update_cap(0.5, 0.5, 1.0, 2, 0.5, 0.5)


def test_forward_and_subgradient():
    kind = ll.ActivationKind.leaky_relu(0.5)
    params = ll.NetworkParams([[1.0, 0.0], [0.0, 1.0]], 1.0, kind)
    assert ll.forward(params, [0.5, -0.5]) == pytest.approx(0.75)
    grad, active, slopes_p, slopes_q = ll.subgradient(
        ll.NetworkParams([[-1.0, 0.0], [0.0, 0.0]], 1.0, kind), ll.Example([1.0, 0.0], 1)
    )
    assert active
    assert slopes_p == [0.5]
    assert slopes_q == [1.0]
    assert grad[0][0] == pytest.approx(-0.5)
    assert grad[1][0] == pytest.approx(1.0)


def test_train_reaches_global_minimum_under_mk():
    data = ll.generate_separable(6, 60, norm_wstar=2.0, seed=3)
    k = 4
    params = ll.initialize(ll.InitScheme.balanced_default(), k, 6,
                           ll.ActivationKind.leaky_relu(0.25), seed=7)
    config = ll.TrainConfig()
    config.learning_rate = 0.5
    config.max_epochs = 5000
    config.seed = 7
    record = ll.train(params, data, config)
    assert record.status == ll.RunStatus.global_min
    wnorm = math.sqrt(sum(c * c for c in data.separator))
    assert record.nonzero_updates <= math.ceil(ll.nonzero_update_cap_default_init(wnorm, 0.25, 0.5, k))


def test_relu_orthogonal_prediction():
    frac_global, frac_nonglobal, max_iters = ll.monte_carlo_relu(8, 2, 1.0, 0.5, trials=100, seed=1)
    assert frac_global + frac_nonglobal == pytest.approx(1.0)
    assert max_iters <= ll.relu_iteration_bound(8, 1.0, 0.5)


def test_bad_local_min():
    data = ll.generate_separable(5, 15, norm_wstar=2.0, seed=9)
    params, safe_eps = ll.relu_bad_local_min(data, 2, seed=10)
    assert safe_eps > 0
    assert ll.hinge_loss(params, data) > 0.5
    is_critical, is_global = ll.critical_point_report(params, data)
    assert is_critical and not is_global

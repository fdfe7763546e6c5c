import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from warmqaoa.variants import (SQRT3_3, VariantConfig, basis_angles, encode_standard, encode_warmest,
                               encode_ws_ab, encode_ws_qaoa, recovery_fields, ws_qaoa_theta, z_signs)


def test_sign_convention():
    assert list(z_signs([0, 1, 0])) == [1, -1, 1]
    assert list(basis_angles([0, 1])) == [np.pi / 2, -np.pi / 2]


def test_standard_encoding():
    cfg = encode_standard(5)
    assert np.all(cfg.alpha == 0) and np.all(cfg.delta == -np.pi / 2) and np.all(cfg.warm_bits == 0)


def test_recovery_fields_give_pi_over_six_tilts():
    bits = np.array([0, 1, 1, 0])
    cfg = encode_ws_ab(bits, recovery_fields(bits))
    assert np.allclose(cfg.alpha, np.where(bits == 0, -np.pi / 6, np.pi / 6))
    assert np.allclose(np.abs(cfg.h), SQRT3_3)


def test_ws_qaoa_theta_values():
    assert np.allclose(ws_qaoa_theta([0.5], 0.25), [0.0])
    # clipping at epsilon: c = 0 and c = 0.25 coincide
    assert np.allclose(ws_qaoa_theta([0.0], 0.25), ws_qaoa_theta([0.25], 0.25))
    assert np.allclose(ws_qaoa_theta([1.0], 0.0), [np.pi / 2])


@pytest.mark.parametrize("c, eps", [([1.2], 0.25), ([-0.1], 0.25), ([0.5], 0.6), ([np.nan], 0.1)])
def test_ws_qaoa_rejects_bad_input(c, eps):
    with pytest.raises(ValueError):
        ws_qaoa_theta(c, eps)


def test_warmest_encoding_relations():
    theta = np.array([0.0, 1.0, 4.0])
    cfg = encode_warmest(theta)
    assert np.allclose(cfg.delta, theta)
    assert np.allclose(cfg.alpha - np.pi / 2, cfg.delta)


def test_config_validation_and_immutability():
    with pytest.raises(ValueError):
        VariantConfig("nope", [0], [0.0], [0.0])
    with pytest.raises(ValueError):
        VariantConfig("standard", [0, 1], [0.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        VariantConfig("standard", [2], [0.0], [0.0])
    cfg = encode_ws_ab([0, 1], [0.1, 0.2])
    with pytest.raises(ValueError):
        cfg.alpha[0] = 1.0


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.floats(-5, 5)), min_size=1, max_size=20))
def test_ws_ab_alpha_stays_in_open_half_turn(pairs):
    bits, h = map(np.array, zip(*pairs))
    cfg = encode_ws_ab(bits, h)
    assert np.all(np.abs(cfg.alpha) < np.pi / 2)
    assert np.allclose(cfg.delta, cfg.alpha - basis_angles(bits))


def test_subset_keeps_order():
    cfg = encode_ws_ab([0, 1, 0, 1], [1.0, 2.0, 3.0, 4.0])
    sub = cfg.subset([3, 0])
    assert list(sub.h) == [4.0, 1.0] and list(sub.warm_bits) == [1, 0]

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cubic_graphs
from warmqaoa.engine import expected_cost
from warmqaoa.graphs import complete_bipartite_33, cut_value, generate_u3r, prism_graph
from warmqaoa.gw import gw_solve
from warmqaoa.oracle import maxcut_bruteforce, statevector_expectation
from warmqaoa.train import (SQRT3_3, AngleOptions, TrainOptions, adam_init, adam_step, bias_gradient,
                            bias_state, fd_gradient, train_angles, train_ws_ab)
from warmqaoa.variants import encode_standard, encode_ws_ab, encode_ws_qaoa, recovery_fields

finite = st.floats(-1e3, 1e3, allow_nan=False)


def test_adam_zero_gradient_is_a_no_op():
    st_, p = adam_step(adam_init(3, 0.4), np.zeros(3), np.array([1.0, 2.0, 3.0]))
    assert np.array_equal(p, [1.0, 2.0, 3.0]) and st_.t == 1


def test_adam_constant_gradient_step_tends_to_lr():
    st_ = adam_init(1, 0.4)
    p = np.zeros(1)
    for _ in range(5000):
        prev = p
        st_, p = adam_step(st_, np.array([2.5]), p)
    assert prev[0] - p[0] == pytest.approx(0.4, rel=1e-6)


def test_adam_without_momentum_is_sign_descent():
    st_ = adam_init(2, 0.1, b1=0.0, b2=0.0)
    _, p = adam_step(st_, np.array([3.0, -0.5]), np.zeros(2))
    assert np.allclose(p, [-0.1, 0.1], atol=1e-8)


def test_adam_shape_mismatch():
    with pytest.raises(ValueError):
        adam_step(adam_init(2, 0.1), np.zeros(3), np.zeros(3))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=8))
def test_adam_is_deterministic_and_counts(pairs):
    g, p = map(np.array, zip(*pairs))
    a1, p1 = adam_step(adam_init(g.size, 0.3), g, p)
    a2, p2 = adam_step(adam_init(g.size, 0.3), g, p)
    assert np.array_equal(p1, p2) and a1.t == a2.t == 1
    assert np.all(a1.v >= 0)


@pytest.mark.parametrize("h, z", [([1 / np.sqrt(3)], [-1.0]), ([-1 / np.sqrt(3)], [1.0]), ([0.0], [0.0])])
def test_bias_gradient_fixed_points(h, z):
    assert bias_gradient(h, z)[0] == pytest.approx(0.0, abs=1e-15)


def test_bias_state_mapping():
    assert list(bias_state([0.6, -0.2], [0, 1])) == [1, 0]
    assert list(bias_state([0.0, 0.0], [1, 0])) == [1, 0]
    bits = np.array([0, 1, 1, 0])
    assert np.array_equal(bias_state(recovery_fields(bits), bits), bits)
    with pytest.raises(ValueError):
        bias_state([0.1], [0, 1])


def test_fd_gradient_linear_and_order():
    a = np.array([0.5, -2.0, 3.0])
    assert np.allclose(fd_gradient(lambda x: a @ x + 1, np.ones(3)), a, atol=1e-10)
    f = lambda x: np.sin(3 * x[0])
    exact = 3 * np.cos(3 * 0.4)
    e1 = abs(fd_gradient(f, [0.4], 1e-2)[0] - exact)
    e2 = abs(fd_gradient(f, [0.4], 5e-3)[0] - exact)
    assert e1 / e2 == pytest.approx(4.0, rel=0.05)
    with pytest.raises(ValueError):
        fd_gradient(f, [0.4], 0.0)


def test_fd_gradient_of_energy_matches_statevector(rng):
    g = generate_u3r(10, rng)
    cfg = encode_ws_ab(rng.integers(0, 2, 10), rng.normal(size=10))
    x = np.array([0.8, 0.3])
    eng = fd_gradient(lambda p: expected_cost(g, cfg, *p), x)
    sv = fd_gradient(lambda p: statevector_expectation(g, cfg, *p)[0], x)
    assert np.allclose(eng, sv, atol=1e-6)


def test_recovery_point_is_a_fixed_point():
    g = generate_u3r(40, 3)
    bits = np.random.default_rng(3).integers(0, 2, 40)
    rep = train_ws_ab(g, bits, TrainOptions(gamma0=np.pi, beta0=np.pi / 2))
    assert rep.converged and rep.iterations <= 5
    assert np.array_equal(rep.bias_assignment, bits)
    assert rep.final_energy == pytest.approx(-cut_value(g, bits), abs=1e-9)


def test_optimal_warm_start_cannot_regress():
    g = generate_u3r(16, 5)
    best, witness = maxcut_bruteforce(g)
    rep = train_ws_ab(g, witness)
    assert rep.best_cut == best == rep.warm_cut


def test_bipartite_warm_start():
    rep = train_ws_ab(complete_bipartite_33(), [0, 0, 0, 1, 1, 1])
    assert rep.best_cut == 9


@settings(max_examples=10, deadline=None)
@given(cubic_graphs((10, 20, 30)), st.integers(0, 2**32 - 1))
def test_best_cut_never_below_warm(g, seed):
    warm = np.random.default_rng(seed).integers(0, 2, g.n)
    rep = train_ws_ab(g, warm, TrainOptions(max_iter=200))
    assert rep.best_cut >= cut_value(g, warm)
    assert rep.best_cut == cut_value(g, rep.best_assignment)
    assert rep.best_cut >= max(rep.bias_cut_trace)
    assert len(rep.energy_trace) == rep.iterations


def test_training_is_reproducible():
    g = generate_u3r(30, 1)
    warm = gw_solve(g, 1, seed=1).best
    a, b = train_ws_ab(g, warm), train_ws_ab(g, warm)
    assert np.array_equal(a.energy_trace, b.energy_trace) and np.array_equal(a.h, b.h)


def test_trace_csv(tmp_path):
    g = generate_u3r(20, 2)
    rep = train_ws_ab(g, gw_solve(g, 1, seed=2).best, TrainOptions(max_iter=30))
    rep.write_trace(tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == "iteration,energy,bias_cut,grad_h_inf"
    assert len(lines) == rep.iterations + 1


def test_train_angles_stationary_start():
    g = generate_u3r(20, 4)
    bits = np.random.default_rng(4).integers(0, 2, 20)
    cfg = encode_ws_ab(bits, recovery_fields(bits))
    gamma, beta, e = train_angles(g, cfg, [(np.pi, np.pi / 2)])
    assert (gamma, beta) == (np.pi, np.pi / 2)
    assert e == pytest.approx(-cut_value(g, bits))


def test_ws_qaoa_training_reaches_warm_cut():
    g = generate_u3r(30, 6)
    warm = gw_solve(g, 1, seed=6)
    _, _, e = train_angles(g, encode_ws_qaoa(warm.best.astype(float), 0.25), [(5.7665, 4.4898)])
    assert e <= -warm.cut + 1e-6


def _grid_min(g, cfg, k=181):
    best = 0.0
    for gamma in np.linspace(0, 2 * np.pi, k):
        for beta in np.linspace(0, np.pi, k // 2):
            best = min(best, expected_cost(g, cfg, gamma, beta))
    return best


def test_standard_plateau_matches_grid_search():
    g = generate_u3r(14, 7)
    cfg = encode_standard(14)
    rng = np.random.default_rng(7)
    gamma, beta, e = train_angles(g, cfg, [tuple(p) for p in rng.uniform(0, 2 * np.pi, (10, 2))])
    grid = _grid_min(g, cfg)
    # training refines the best grid cell, never loses to it
    assert grid - 0.02 <= e <= grid + 1e-9
    assert abs(e / g.m + 0.692) <= 0.01
    assert statevector_expectation(g, cfg, gamma, beta)[0] == pytest.approx(e, abs=1e-9)


def test_train_angles_needs_inits():
    with pytest.raises(ValueError):
        train_angles(prism_graph(), encode_standard(6), [])

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import cubic_graphs
from warmqaoa.graphs import (Graph, complete_bipartite_33, complete_graph, cube_graph, cut_value,
                             cycle_graph, generate_u3r, petersen_graph, prism_graph)
from warmqaoa.oracle import (CapacityError, check_pi_gamma_identity, final_state,
                             local_subgraph_expectation, maxcut_bruteforce, statevector_expectation)
from warmqaoa.variants import encode_standard, encode_ws_ab, random_config, recovery_fields


def enumerate_maxcut(g):
    return max(cut_value(g, b) for b in itertools.product((0, 1), repeat=g.n))


@pytest.mark.parametrize("g, value", [
    (complete_graph(4), 4),
    (complete_bipartite_33(), 9),
    (prism_graph(), 7),
    (cube_graph(), 12),
    (petersen_graph(), 12),
    (cycle_graph(5), 4),
    (Graph(2, ((0, 1),)), 1),
    (Graph(3, ()), 0),
])
def test_bruteforce_known_values(g, value):
    best, witness = maxcut_bruteforce(g)
    assert best == value
    assert cut_value(g, witness) == value


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 11), st.floats(0.1, 0.9), st.integers(0, 2**32 - 1))
def test_bruteforce_matches_naive_enumeration(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p)
    g = Graph(n, edges)
    best, witness = maxcut_bruteforce(g)
    assert best == enumerate_maxcut(g)
    assert cut_value(g, witness) == best


def test_bruteforce_capacity():
    with pytest.raises(CapacityError):
        maxcut_bruteforce(generate_u3r(28, 0))
    with pytest.raises(CapacityError):
        maxcut_bruteforce(generate_u3r(12, 0), cap=10)


def test_statevector_standard_at_zero_angles():
    g = generate_u3r(10, 2)
    e, z = statevector_expectation(g, encode_standard(g.n), 0.0, 0.0)
    assert e == pytest.approx(-g.m / 2, abs=1e-12)
    assert np.allclose(z, 0.0, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(cubic_graphs((4, 6, 8)), st.integers(0, 2**32 - 1))
def test_final_state_is_normalized(g, seed):
    rng = np.random.default_rng(seed)
    psi = final_state(g, random_config(g.n, rng), *rng.uniform(0, 2 * np.pi, 2))
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)


def test_statevector_recovers_warm_state():
    g = prism_graph()
    bits = np.array([0, 1, 1, 0, 0, 1])
    e, z = statevector_expectation(g, encode_ws_ab(bits, recovery_fields(bits)), np.pi, np.pi / 2)
    assert e == pytest.approx(-cut_value(g, bits), abs=1e-12)
    assert np.allclose(z, 1 - 2 * bits, atol=1e-12)


def test_statevector_capacity():
    g = generate_u3r(18, 0)
    with pytest.raises(CapacityError):
        statevector_expectation(g, encode_standard(g.n), 0.1, 0.2)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_pi_gamma_identity_on_cubic(n):
    assert check_pi_gamma_identity(generate_u3r(n, n))


@pytest.mark.parametrize("g", [cycle_graph(4), cycle_graph(6), complete_graph(5)])
def test_pi_gamma_identity_fails_with_even_degree(g):
    assert not check_pi_gamma_identity(g)


def test_pi_gamma_identity_on_k4_explicitly():
    # exp(-i pi H_C) is diagonal; on K4 every entry equals prod Z up to one phase
    assert check_pi_gamma_identity(complete_graph(4), seed=3)


@settings(max_examples=20, deadline=None)
@given(cubic_graphs((6, 8, 10)), st.integers(0, 2**32 - 1))
def test_local_subgraphs_match_full_state(g, seed):
    rng = np.random.default_rng(seed)
    cfg = random_config(g.n, rng)
    gamma, beta = rng.uniform(0, 2 * np.pi, 2)
    e_loc, z_loc = local_subgraph_expectation(g, cfg, gamma, beta)
    e_sv, z_sv = statevector_expectation(g, cfg, gamma, beta)
    assert e_loc == pytest.approx(e_sv, abs=1e-10)
    assert np.allclose(z_loc, z_sv, atol=1e-10)


def test_local_subgraphs_need_cubic():
    g = cycle_graph(6)
    with pytest.raises(ValueError):
        local_subgraph_expectation(g, encode_standard(6), 0.1, 0.1)

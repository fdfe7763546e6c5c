import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import angles, cubic_graphs
from warmqaoa.engine import (PAIR_TERMS, edge_pair_terms, expectations, expected_cost, expected_z,
                             mixer_coeffs, vertex_terms)
from warmqaoa.graphs import (classify_edge, complete_graph, cut_value, cycle_graph, generate_u3r,
                             petersen_graph, prism_graph)
from warmqaoa.oracle import _local_graph, final_state, _zvals, statevector_expectation
from warmqaoa.variants import (VariantConfig, encode_standard, encode_ws_ab, encode_ws_qaoa,
                               random_config, recovery_fields)

PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def _cost_phase(sub, gamma):
    z = _zvals(sub.n)
    diag = sum(0.5 * (z[u] * z[v] - 1.0) for u, v in sub.edges)
    return np.exp(-1j * gamma * diag)


def _prepared_state(cfg):
    """R_y(delta)|warm> as a dense vector."""
    psi = np.array([1.0 + 0j])
    for b, d in zip(cfg.warm_bits, cfg.delta):
        q = np.zeros(2, complex)
        q[b] = 1
        c, s = np.cos(d / 2), np.sin(d / 2)
        psi = np.kron(psi, np.array([[c, -s], [s, c]]) @ q)
    return psi


def _op(n, where):
    out = np.array([[1.0 + 0j]])
    for q in range(n):
        out = np.kron(out, where.get(q, np.eye(2)))
    return out


def dense_pair_term(g, cfg, gamma, j, k, p, q):
    """<P_j Q_k> after the cost layer, by brute force on the edge light cone."""
    sub, verts = _local_graph(g, [j, k])
    local = cfg.subset(verts)
    phi = _cost_phase(sub, gamma) * _prepared_state(local)
    return float(np.real(np.vdot(phi, _op(sub.n, {0: PAULI[p], 1: PAULI[q]}) @ phi)))


def dense_vertex_term(g, cfg, gamma, j, p):
    sub, verts = _local_graph(g, [j])
    phi = _cost_phase(sub, gamma) * _prepared_state(cfg.subset(verts))
    return float(np.real(np.vdot(phi, _op(sub.n, {0: PAULI[p]}) @ phi)))


def test_mixer_coefficients_special_values():
    c = mixer_coeffs(np.array([0.3]), 0.0)
    assert (c.cz, c.cy, c.cx) == (1.0, 0.0, -0.0)
    c = mixer_coeffs(np.array([0.0]), np.pi / 2)
    assert c.cz == pytest.approx(-1.0) and c.cy == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(angles, angles)
def test_mixer_coefficients_are_a_unit_vector(alpha, beta):
    c = mixer_coeffs(np.array([alpha]), beta)
    assert c.cz**2 + c.cy**2 + c.cx**2 == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("g, edge, cls", [
    (prism_graph(), (0, 3), "A"),
    (prism_graph(), (0, 1), "B"),
    (complete_graph(4), (0, 1), "C"),
    (petersen_graph(), (0, 5), "A"),
])
def test_pair_terms_against_dense_light_cone(g, edge, cls, rng):
    nb = classify_edge(g, edge)
    assert nb.cls == cls
    for _ in range(10):
        cfg = random_config(g.n, rng)
        gamma = rng.uniform(-np.pi, np.pi)
        E = edge_pair_terms(nb, cfg, gamma)
        for pq in PAIR_TERMS:
            want = dense_pair_term(g, cfg, gamma, nb.j, nb.k, pq[0], pq[1])
            assert E[pq] == pytest.approx(want, abs=1e-10), (cls, pq)


def test_vertex_terms_against_dense_light_cone(rng):
    g = prism_graph()
    for _ in range(20):
        cfg = random_config(g.n, rng)
        gamma = rng.uniform(-np.pi, np.pi)
        j = int(rng.integers(g.n))
        got = vertex_terms(j, g.adjacency[j], cfg, gamma)
        want = [dense_vertex_term(g, cfg, gamma, j, p) for p in "ZYX"]
        assert np.allclose(got, want, atol=1e-10)


def test_zero_delta_leaves_only_zz():
    g = prism_graph()
    bits = np.array([0, 1, 1, 0, 1, 0])
    cfg = VariantConfig("ws_ab", bits, np.zeros(6), np.zeros(6))
    for e in g.edges:
        E = edge_pair_terms(classify_edge(g, e), cfg, 0.7)
        z = 1 - 2 * bits
        assert E["ZZ"] == z[e[0]] * z[e[1]]
        assert all(E[k] == 0 for k in PAIR_TERMS if k != "ZZ")


def test_zero_gamma_kills_y_terms():
    g = prism_graph()
    rng = np.random.default_rng(0)
    cfg = random_config(6, rng, "ws_ab")
    for e in g.edges:
        E = edge_pair_terms(classify_edge(g, e), cfg, 0.0)
        assert all(abs(E[k]) < 1e-15 for k in ("XY", "YX", "ZY", "YZ", "YY"))
        j, k = e
        zc = cfg.zc
        assert E["XX"] == pytest.approx(np.sin(cfg.delta[j]) * np.sin(cfg.delta[k]) * zc[j] * zc[k])


def test_vertex_terms_special_cases():
    g = prism_graph()
    bits = np.array([1, 0, 0, 1, 0, 1])
    cfg = VariantConfig("ws_ab", bits, np.zeros(6), np.zeros(6))
    assert vertex_terms(0, g.adjacency[0], cfg, 1.1) == (-1.0, 0.0, 0.0)
    cfg = encode_ws_ab(bits, np.full(6, 0.4))
    ez, ey, ex = vertex_terms(0, g.adjacency[0], cfg, 0.0)
    assert ey == 0.0 and ex == pytest.approx(np.sin(cfg.delta[0]) * cfg.zc[0])


def test_standard_qaoa_at_zero_angles():
    g = generate_u3r(40, 1)
    assert expected_cost(g, encode_standard(g.n), 0.0, 0.0) == pytest.approx(-g.m / 2, abs=1e-12)


def test_identity_circuit_reads_warm_signs():
    g = generate_u3r(20, 4)
    bits = np.random.default_rng(4).integers(0, 2, 20)
    cfg = VariantConfig("ws_ab", bits, np.full(20, 0.3), np.zeros(20))
    assert np.allclose(expected_z(g, cfg, 0.8, 0.0), 1 - 2 * bits)


@settings(max_examples=120, deadline=None)
@given(cubic_graphs((4, 6, 8, 10)), st.integers(0, 2**32 - 1), angles, angles)
def test_engine_matches_statevector(g, seed, gamma, beta):
    cfg = random_config(g.n, np.random.default_rng(seed))
    e, z = expectations(g, cfg, gamma, beta)
    e0, z0 = statevector_expectation(g, cfg, gamma, beta)
    assert e == pytest.approx(e0, abs=1e-9)
    assert np.max(np.abs(z - z0)) <= 1e-9


@settings(max_examples=80, deadline=None)
@given(cubic_graphs((4, 10, 30, 60)), st.integers(0, 2**32 - 1), angles, angles)
def test_energy_bounds(g, seed, gamma, beta):
    e = expected_cost(g, random_config(g.n, np.random.default_rng(seed)), gamma, beta)
    assert -g.m - 1e-9 <= e <= 1e-9


@settings(max_examples=60, deadline=None)
@given(cubic_graphs((4, 8, 20, 50, 100)), st.integers(0, 2**32 - 1))
def test_recovery_point_returns_warm_cut(g, seed):
    bits = np.random.default_rng(seed).integers(0, 2, g.n)
    cfg = encode_ws_ab(bits, recovery_fields(bits))
    e, z = expectations(g, cfg, np.pi, np.pi / 2)
    assert abs(e + cut_value(g, bits)) <= 1e-12 * max(1, g.m)
    assert np.allclose(z, 1 - 2 * bits, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(cubic_graphs((4, 8, 20, 50)), st.integers(0, 2**32 - 1))
def test_ws_qaoa_recovery(g, seed):
    bits = np.random.default_rng(seed).integers(0, 2, g.n)
    e = expected_cost(g, encode_ws_qaoa(bits.astype(float), 0.25), 0.0, np.pi / 2)
    assert abs(e + cut_value(g, bits)) <= 1e-12 * max(1, g.m)


@settings(max_examples=60, deadline=None)
@given(cubic_graphs((6, 10, 24)), st.integers(0, 2**32 - 1), angles, angles)
def test_global_flip_symmetry(g, seed, gamma, beta):
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, g.n)
    h = rng.normal(size=g.n)
    e1 = expected_cost(g, encode_ws_ab(bits, h), gamma, beta)
    e2 = expected_cost(g, encode_ws_ab(1 - bits, -h), gamma, beta)
    assert e1 == pytest.approx(e2, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(cubic_graphs((6, 8, 12)), st.integers(0, 2**32 - 1), angles, angles)
def test_periodicity(g, seed, gamma, beta):
    cfg = random_config(g.n, np.random.default_rng(seed))
    e, z = expectations(g, cfg, gamma, beta)
    for dg, db in ((2 * np.pi, 0.0), (0.0, np.pi)):
        e2, z2 = expectations(g, cfg, gamma + dg, beta + db)
        assert e2 == pytest.approx(e, abs=1e-10)
        assert np.allclose(z2, z, atol=1e-10)


def test_engine_rejects_non_cubic_and_mismatched():
    with pytest.raises(ValueError):
        expected_cost(cycle_graph(6), encode_standard(6), 0.1, 0.2)
    with pytest.raises(ValueError):
        expected_cost(prism_graph(), encode_standard(8), 0.1, 0.2)


def test_edge_energy_needs_the_half():
    # the two-body sum without the 1/2 disagrees with the full simulation
    g = prism_graph()
    cfg = random_config(6, np.random.default_rng(9), "ws_ab")
    e = expected_cost(g, cfg, 0.9, 0.4)
    e0, _ = statevector_expectation(g, cfg, 0.9, 0.4)
    undivided = 2 * e + g.m / 2
    assert e == pytest.approx(e0, abs=1e-12)
    assert abs(undivided - e0) > 1e-3


def test_z_is_a_single_light_cone_evaluation():
    g = prism_graph()
    cfg = random_config(6, np.random.default_rng(2), "warmest")
    z = expected_z(g, cfg, 0.7, 0.3)
    _, z0 = statevector_expectation(g, cfg, 0.7, 0.3)
    assert np.allclose(z, z0, atol=1e-12)
    assert not np.allclose(3 * z, z0, atol=1e-3)

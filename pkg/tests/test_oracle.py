"""Brute-force oracle machinery: roots, null spaces, audits, truncations."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aeskit import oracle, su2, su11
from aeskit.errors import FullRank, NotHermitian

from helpers import assert_multiset_close, random_su2_weight, uniform_disk

RNG = np.random.default_rng(99)


# ------------------------------------------------------------- eigenvalues


def test_char_poly_roots_j3():
    _, _, j3 = su2.rep_matrices(1.0)
    assert_multiset_close(oracle.char_poly_roots(j3), [-1, 0, 1], 1e-10)


def test_char_poly_roots_two_by_two():
    w = su2.Su2Weight(3, 4, 0)
    roots = oracle.char_poly_roots(su2.weight_matrix(0.5, w))
    assert_multiset_close(roots, [-2.5, 2.5], 1e-10)


def test_char_poly_roots_nilpotent_cluster():
    # pure raising weight: triple zero eigenvalue; the cluster converges
    # linearly so the accuracy budget is looser here
    w = su2.Su2Weight(1, 1j, 0)
    roots = oracle.char_poly_roots(su2.weight_matrix(1.0, w))
    assert np.max(np.abs(roots)) < 1e-6


def test_char_poly_roots_match_ladder_spectrum():
    for _ in range(100):
        w = random_su2_weight(RNG)
        j = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0][RNG.integers(6)]
        roots = oracle.char_poly_roots(su2.weight_matrix(j, w))
        assert_multiset_close(roots, su2.spectrum(j, w), 1e-8)


def test_char_poly_size_guard():
    with pytest.raises(ValueError):
        oracle.char_poly_roots(np.eye(65))


# -------------------------------------------------------------- null space


def test_nullspace_matches_solver_eigenvectors():
    for _ in range(20):
        w = random_su2_weight(RNG)
        j = 1.5
        matrix = su2.weight_matrix(j, w)
        for m0 in su2.m_values(j):
            sol = su2.solve_aes(j, w, m0)
            vec = oracle.nullspace_vector(matrix - sol.lam * np.eye(4))
            assert abs(np.vdot(vec, sol.state.amplitudes)) > 1 - 1e-8


def test_nullspace_zero_matrix():
    vec = oracle.nullspace_vector(np.zeros((3, 3), dtype=complex))
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-14


def test_nullspace_truncated_su11_ladder():
    k, w, l = 1.0, su11.Su11Weight(1, 0, 2), 1
    sol = su11.solve_aes_su11(k, w, l=l, N=300)
    n = sol.state.truncation
    matrix = oracle.su11_weight_matrix(k, w, n)
    vec = oracle.nullspace_vector(matrix - sol.lam * np.eye(n + 1))
    assert abs(np.vdot(vec, sol.state.amplitudes)) > 1 - 1e-6


def test_nullspace_full_rank_raises():
    with pytest.raises(FullRank):
        oracle.nullspace_vector(np.eye(4, dtype=complex))


# --------------------------------------------------------- uncertainty audit


def test_audit_generalized_is_saturates():
    j = 1.5
    j1, j2, _ = su2.rep_matrices(j)
    w = su2.intelligent_weight_su2("generalized", 0.5 + 0.3j)
    for m0 in su2.m_values(j):
        sol = su2.solve_aes(j, w, m0)
        rep = oracle.uncertainty_audit(sol.state, j1, j2)
        assert abs(rep.gap_sr) < 1e-9


def test_audit_basis_state_baseline():
    j = 2.0
    j1, j2, _ = su2.rep_matrices(j)
    for m0 in su2.m_values(j):
        sol = su2.solve_aes(j, su2.Su2Weight(0, 0, 1), m0)
        rep = oracle.uncertainty_audit(sol.state, j1, j2)
        assert rep.gap_sr >= -1e-9
        assert abs(rep.rhs_h - 0.25 * m0**2) < 1e-12


def test_audit_ordinary_is_zero_covariance():
    j = 1.0
    j1, j2, _ = su2.rep_matrices(j)
    sol = su2.solve_aes(j, su2.intelligent_weight_su2("j1j2", 0.5), 0.0)
    rep = oracle.uncertainty_audit(sol.state, j1, j2)
    assert abs(rep.cov_ab) < 1e-9
    assert abs(rep.gap_h) < 1e-9


def test_audit_rejects_non_hermitian():
    j1, _, j3 = su2.rep_matrices(1.0)
    with pytest.raises(NotHermitian):
        oracle.uncertainty_audit(np.array([1, 0, 0]), j1 + 1e-6j * np.eye(3), j3)


def test_audit_ordering_many_random_states():
    # lhs >= rhs_sr >= rhs_h on arbitrary states and Hermitian pairs
    rng = np.random.default_rng(7)
    j1, j2, j3 = su2.rep_matrices(1.5)
    ops = [j1, j2, j3, j1 + 0.3 * j3]
    for _ in range(1000):
        vec = rng.normal(size=4) + 1j * rng.normal(size=4)
        a, b = ops[rng.integers(4)], ops[rng.integers(4)]
        rep = oracle.uncertainty_audit(vec, a, b)
        assert rep.lhs >= rep.rhs_sr - 1e-9
        assert rep.rhs_sr >= rep.rhs_h - 1e-9


@settings(max_examples=50, deadline=None)
@given(data=st.lists(st.floats(-1, 1), min_size=10, max_size=10))
def test_audit_ordering_hypothesis(data):
    vec = np.array(data[:5]) + 1j * np.array(data[5:])
    if np.linalg.norm(vec) < 1e-3:
        return
    j1, j2, _ = su2.rep_matrices(2.0)
    rep = oracle.uncertainty_audit(vec, j1, j2)
    assert rep.lhs >= rep.rhs_sr - 1e-9
    assert rep.rhs_sr >= rep.rhs_h - 1e-9


# ------------------------------------------------------ truncated matrices


def test_truncated_commutator_interior():
    k, n = 1.0, 24
    k1, k2, k3 = oracle.truncated_su11_matrices(k, n)
    kp = k1 + 1j * k2
    km = k1 - 1j * k2
    comm = km @ kp - kp @ km
    assert np.allclose(comm[: n - 1], (2 * k3)[: n - 1], atol=1e-12)


def test_truncated_casimir_interior():
    for k in (0.5, 1.5, 2.0):
        n = 20
        k1, k2, k3 = oracle.truncated_su11_matrices(k, n)
        casimir = k3 @ k3 - k1 @ k1 - k2 @ k2
        interior = casimir[: n - 1, : n - 1]
        assert np.allclose(interior, k * (k - 1) * np.eye(n - 1), atol=1e-12)


def test_truncated_lowering_annihilates_bg_state():
    k, z = 1.0, 1.7 - 0.4j
    bg = su11.bg_state(k, z, N=320)
    k1, k2, _ = oracle.truncated_su11_matrices(k, bg.state.truncation)
    km = k1 - 1j * k2
    assert oracle.eigen_residual(km, z, bg.state, drop_rows=2) < 1e-10


def test_truncation_minimum_size():
    with pytest.raises(ValueError):
        oracle.truncated_su11_matrices(1.0, 4)


# ------------------------------------------------------ identity resolution


def test_identity_resolution_random_states():
    rng = np.random.default_rng(31)
    for j in (0.5, 1.0, 1.5):
        dim = int(2 * j + 1)
        for _ in range(5):
            vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            state = su2.Su2State(j, vec / np.linalg.norm(vec))
            assert abs(oracle.identity_resolution(state) - 1.0) < 1e-6


def test_identity_resolution_coherent_state():
    state = su2.coherent_state(1.5, uniform_disk(RNG, 2.0))
    assert abs(oracle.identity_resolution(state) - 1.0) < 1e-6

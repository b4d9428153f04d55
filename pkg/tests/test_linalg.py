import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import eig2x2_closed_form, random_hermitian, random_unitary, taylor_propagator
from qudit_eet.linalg import eig_hermitian, fix_phases, propagator, singular_values

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def hermitian_from_seed(seed, n):
    return random_hermitian(np.random.default_rng(seed), n)


def test_diagonal_input():
    es = eig_hermitian(np.diag([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(es.eigenvalues, [1, 2, 3], atol=1e-14)
    np.testing.assert_allclose(es.eigenvectors, np.eye(3), atol=1e-14)


def test_pauli_x_eigenvalues():
    np.testing.assert_allclose(eig_hermitian(PAULI_X).eigenvalues, [-1, 1], atol=1e-14)


def test_frenkel_block_a_matches_closed_form():
    H = np.array([[16050, -87], [-87, 15808]], dtype=float)
    expected = eig2x2_closed_form(16050, 15808, -87)
    np.testing.assert_allclose(eig_hermitian(H).eigenvalues, expected, rtol=0, atol=1e-9)
    np.testing.assert_allclose(expected, [15779.97, 16078.03], atol=0.01)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("n", [2, 4, 9, 16])
def test_reconstruction_and_orthonormality(seed, n):
    H = hermitian_from_seed(seed, n)
    es = eig_hermitian(H)
    assert np.all(np.diff(es.eigenvalues) >= 0)
    assert np.max(np.abs(es.reconstruct() - H)) < 1e-10
    Q = es.eigenvectors
    assert np.max(np.abs(Q.conj().T @ Q - np.eye(n))) < 1e-10


def test_phase_convention_largest_component_real_positive():
    es = eig_hermitian(hermitian_from_seed(3, 6))
    Q = es.eigenvectors
    for k in range(6):
        i = np.argmax(np.abs(Q[:, k]))
        assert Q[i, k].imag == 0 and Q[i, k].real > 0


def test_phase_fix_is_idempotent():
    Q = random_unitary(np.random.default_rng(0), 4)
    once = fix_phases(Q)
    np.testing.assert_allclose(fix_phases(once), once, atol=1e-15)


def test_rejects_non_square():
    with pytest.raises(ValueError, match="square"):
        eig_hermitian(np.zeros((2, 3)))


def test_rejects_non_hermitian_and_names_entry():
    H = np.array([[1, 2], [0, 1]], dtype=complex)
    with pytest.raises(ValueError, match=r"H\[0,1\]"):
        eig_hermitian(H)


def test_accepts_tiny_asymmetry():
    H = np.array([[1, 2 + 1e-13], [2, 1]], dtype=complex)
    eig_hermitian(H)


def test_propagator_at_zero_is_identity():
    H = hermitian_from_seed(1, 5)
    assert np.max(np.abs(propagator(H, 0.0) - np.eye(5))) < 1e-12


def test_propagator_rabi_quarter_period():
    U = propagator(PAULI_X, np.pi / 2)
    np.testing.assert_allclose(U, -1j * PAULI_X, atol=1e-14)


def test_propagator_matches_taylor_oracle():
    H = hermitian_from_seed(7, 4)
    assert np.max(np.abs(propagator(H, 0.1) - taylor_propagator(H, 0.1))) < 1e-9


def test_propagator_rejects_nonfinite_time():
    with pytest.raises(ValueError):
        propagator(PAULI_X, float("nan"))


def test_evolve_matches_propagator_columns():
    es = eig_hermitian(hermitian_from_seed(2, 4))
    v = np.arange(4) + 1j
    taus = np.array([0.0, 0.3, 1.7])
    rows = es.evolve(v, taus)
    for tau, row in zip(taus, rows):
        np.testing.assert_allclose(row, es.propagator(tau) @ v, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    n=st.integers(1, 16),
    t1=st.floats(-20, 20),
    t2=st.floats(-20, 20),
)
def test_propagator_composition(seed, n, t1, t2):
    H = hermitian_from_seed(seed, n)
    es = eig_hermitian(H)
    lhs = es.propagator(t1) @ es.propagator(t2)
    assert np.max(np.abs(lhs - es.propagator(t1 + t2))) < 1e-9


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 16), tau=st.floats(-100, 100))
def test_propagator_preserves_norm(seed, n, tau):
    rng = np.random.default_rng(seed)
    H = random_hermitian(rng, n)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    U = propagator(H, tau)
    assert abs(np.linalg.norm(U @ v) - np.linalg.norm(v)) < 1e-10 * max(1.0, np.linalg.norm(v))
    assert np.max(np.abs(U.conj().T @ U - np.eye(n))) < 1e-10


def test_singular_values_identity_and_rank_one():
    np.testing.assert_allclose(singular_values(np.eye(4)), [1, 1, 1, 1])
    c = np.zeros((4, 4))
    c[2, 1] = 0.5
    np.testing.assert_allclose(singular_values(c), [0.5, 0, 0, 0], atol=1e-15)


def test_singular_values_square_to_gram_eigenvalues():
    rng = np.random.default_rng(11)
    c = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    s = singular_values(c)
    assert np.all(np.diff(s) <= 0) and np.all(s >= 0)
    gram = eig_hermitian(c @ c.conj().T).eigenvalues[::-1]
    assert np.max(np.abs(s**2 - gram)) < 1e-10


def test_singular_values_batched():
    rng = np.random.default_rng(0)
    c = rng.normal(size=(7, 3, 3))
    np.testing.assert_allclose(singular_values(c)[4], singular_values(c[4]))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_singular_values_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    U, W = random_unitary(rng, 4), random_unitary(rng, 4)
    assert np.max(np.abs(singular_values(U @ c @ W) - singular_values(c))) < 1e-10

import itertools

import numpy as np
import pytest
from scipy.optimize import minimize

from conftest import assert_close, brute_correlation
from gqdprotect.bloch import (antisymmetric_mask, bloch_decompose, correlation_matrix, gellmann,
                              gqd_lower_bound, gqd_lower_bound_raw, gqd_two_qubit)
from gqdprotect.linalg import tensor
from gqdprotect.states import bell_qutrit, werner

PAULI = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]


def brute_gqd_qubit_a(rho, n=2, starts=12):
    """min over measurement bases on A of ||rho - dephased(rho)||^2."""
    rng = np.random.default_rng(7)

    def distance(v):
        th, ph = v
        k0 = np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])
        k1 = np.array([-np.exp(-1j * ph) * np.sin(th / 2), np.cos(th / 2)])
        out = np.trace(rho @ rho).real
        for k in (k0, k1):
            proj = np.kron(np.outer(k, k.conj()), np.eye(n))
            block = proj @ rho @ proj
            out -= np.trace(block @ block).real
        return out

    return min(minimize(distance, x0, method="Nelder-Mead",
                        options=dict(xatol=1e-12, fatol=1e-15, maxiter=4000)).fun
               for x0 in rng.uniform(0, np.pi, size=(starts, 2)))


def test_gellmann_qubit_is_pauli():
    assert_close(gellmann(2), np.array(PAULI), 0)


def test_gellmann_qutrit_diagonals():
    g = gellmann(3)
    assert g.shape == (8, 3, 3)
    assert_close(g[6], np.diag([1, -1, 0]), 0)
    assert_close(g[7], np.diag([1, 1, -2]) / np.sqrt(3), 1e-15)
    assert list(antisymmetric_mask(3)) == [False] * 3 + [True] * 3 + [False] * 2


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_gellmann_normalization(m):
    g = gellmann(m)
    assert len(g) == m * m - 1
    gram = np.einsum("aij,bji->ab", g, g)
    assert_close(gram, 2 * np.eye(m * m - 1), 1e-12)
    assert_close(np.trace(g, axis1=1, axis2=2), 0, 1e-15)
    assert_close(g, g.conj().transpose(0, 2, 1), 0)


def test_gellmann_rejects_small_dim():
    with pytest.raises(ValueError):
        gellmann(1)


def test_decompose_maximally_mixed():
    b = bloch_decompose(np.eye(9) / 9, 3, 3)
    assert_close(b.x, 0, 1e-15)
    assert_close(b.y, 0, 1e-15)
    assert_close(b.T, 0, 1e-15)


def test_decompose_bell_qutrit():
    b = bloch_decompose(bell_qutrit(), 3, 3)
    # <psi0| A (x) B |psi0> = Tr(A B^T)/3, and lambda^T = -lambda on imaginary generators
    signs = np.where(antisymmetric_mask(3), -1.0, 1.0)
    assert_close(b.x, 0, 1e-15)
    assert_close(b.y, 0, 1e-15)
    assert_close(b.T, 1.5 * np.diag(signs), 1e-15)


def test_decompose_product_state(rand_states):
    a, c = rand_states(2, 3, offset=10)
    b = bloch_decompose(tensor(a, c), 3, 3)
    # rho_A (x) rho_B = (I + x.g)(I + y.g)/9 so T = outer(x, y)
    assert_close(b.T, np.outer(b.x, b.y), 1e-14)


def test_decompose_reconstructs(rand_states):
    for rho in rand_states(10, 9, offset=20):
        assert_close(bloch_decompose(rho, 3, 3).reconstruct(), rho, 1e-10)
    for rho in rand_states(10, 6, offset=30):
        assert_close(bloch_decompose(rho, 2, 3).reconstruct(), rho, 1e-10)


def test_correlation_matrix_examples():
    c = correlation_matrix(np.eye(9) / 9, 3, 3)
    expected = np.zeros((9, 9))
    expected[0, 0] = 1 / 3
    assert_close(c, expected, 1e-15)

    signs = np.where(antisymmetric_mask(3), -1.0, 1.0)
    c = correlation_matrix(bell_qutrit(), 3, 3)
    assert c[0, 0] == pytest.approx(1 / 3, abs=1e-15)
    assert_close(c[1:, 1:], np.diag(signs) / 3, 1e-15)
    assert_close(c @ c.T, np.eye(9) / 9, 1e-15)

    eta = 0.37
    c = correlation_matrix(werner(eta), 3, 3)
    assert_close(c[1:, 1:], eta * np.diag(signs) / 3, 1e-15)


def test_correlation_block_layout(rand_states):
    for rho in rand_states(5, 6, offset=40):
        m, n = 2, 3
        b = bloch_decompose(rho, m, n)
        c = correlation_matrix(rho, m, n)
        assert c[0, 0] == pytest.approx(1 / np.sqrt(m * n), abs=1e-15)
        assert_close(c[0, 1:], np.sqrt(2) / (n * np.sqrt(m)) * b.y, 1e-14)
        assert_close(c[1:, 0], np.sqrt(2) / (m * np.sqrt(n)) * b.x, 1e-14)
        assert_close(c[1:, 1:], 2 / (m * n) * b.T, 1e-14)


def test_correlation_matches_brute_force(rand_states):
    for rho in rand_states(10, 9, offset=50):
        assert_close(correlation_matrix(rho, 3, 3), brute_correlation(rho, 3, 3), 1e-14)


@pytest.mark.parametrize("dim,m,n", [(9, 3, 3), (4, 2, 2)])
def test_purity_identity(dim, m, n, rand_states):
    for rho in rand_states(1000, dim, offset=60):
        c = correlation_matrix(rho, m, n)
        assert np.sum(c * c) == pytest.approx(np.trace(rho @ rho).real, abs=1e-9)


def test_lower_bound_analytic_values():
    assert gqd_lower_bound(np.eye(9) / 9) == 0.0
    assert gqd_lower_bound(bell_qutrit()) == pytest.approx(2 / 3, abs=1e-12)
    for eta in (0.0, 0.5, 0.8, 1.0):
        assert gqd_lower_bound(werner(eta)) == pytest.approx(2 * eta ** 2 / 3, abs=1e-12)


def test_lower_bound_local_unitary_invariance(rand_states, rand_unitary):
    for k, rho in enumerate(rand_states(30, 9, offset=70)):
        u = np.kron(rand_unitary(2 * k, 3), rand_unitary(2 * k + 1, 3))
        assert gqd_lower_bound(u @ rho @ u.conj().T) == pytest.approx(gqd_lower_bound(rho), abs=1e-9)


def test_lower_bound_zero_on_products(rand_states):
    states = rand_states(40, 3, offset=80)
    for a, b in zip(states[::2], states[1::2]):
        assert abs(gqd_lower_bound_raw(tensor(a, b), 3, 3)) < 1e-12
        assert gqd_lower_bound(tensor(a, b)) >= 0.0


def test_two_qubit_examples():
    bell = np.zeros(4)
    bell[[0, 3]] = 1 / np.sqrt(2)
    assert gqd_two_qubit(np.outer(bell, bell)) == pytest.approx(0.5, abs=1e-12)
    a = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
    assert gqd_two_qubit(np.kron(a, np.eye(2) / 2)) == pytest.approx(0.0, abs=1e-12)
    cc = np.diag([0.1, 0.2, 0.3, 0.4])
    assert gqd_two_qubit(cc) == pytest.approx(0.0, abs=1e-12)


def test_two_qubit_exact_against_minimization(rand_states):
    for rho in rand_states(8, 4, offset=90):
        assert gqd_two_qubit(rho) == pytest.approx(brute_gqd_qubit_a(rho), abs=1e-9)


def test_two_qubit_bound_never_exceeds_exact(rand_states):
    for rho in rand_states(200, 4, offset=95):
        assert gqd_lower_bound_raw(rho, 2, 2) <= gqd_two_qubit(rho) + 1e-12


def test_two_qubit_bound_tight_when_identity_row_decouples():
    # With x + T y = 0 the identity component of C C^T is an eigenvector and
    # the bound coincides with the exact value; here x = y = 0.
    rng = np.random.default_rng(97)
    checked = 0
    for _ in range(50):
        u, _, vh = np.linalg.svd(rng.standard_normal((3, 3)))
        t = u @ np.diag(rng.uniform(0, 1, 3) / 3) @ vh
        state = np.eye(4, dtype=complex) / 4
        for i, j in itertools.product(range(3), repeat=2):
            state += t[i, j] * np.kron(PAULI[i], PAULI[j]) / 4
        if np.linalg.eigvalsh(state)[0] < 0:
            continue
        checked += 1
        assert gqd_lower_bound(state, 2, 2) == pytest.approx(gqd_two_qubit(state), abs=1e-9)
    assert checked > 10

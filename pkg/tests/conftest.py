import itertools

import numpy as np
import pytest

from gqdprotect.states import random_density, random_unitary

SEED_BASE = 20240601


@pytest.fixture
def rand_states():
    """Factory for seeded Ginibre states; the seed is printed for reproduction."""

    def make(count, dim, offset=0):
        print(f"random_density seeds {SEED_BASE + offset}..{SEED_BASE + offset + count - 1}, dim={dim}")
        return [random_density(SEED_BASE + offset + k, dim) for k in range(count)]

    return make


@pytest.fixture
def rand_unitary():
    return lambda seed, dim: random_unitary(SEED_BASE + seed, dim)


def assert_close(a, b, atol):
    np.testing.assert_allclose(np.asarray(a), np.asarray(b), rtol=0, atol=atol)


def brute_correlation(rho, m, n):
    """C by explicit Kronecker products and traces, bases built inline."""

    def basis(d):
        out = [np.eye(d) / np.sqrt(d)]
        for j, k in itertools.combinations(range(d), 2):
            e = np.zeros((d, d), dtype=complex)
            e[j, k] = e[k, j] = 1 / np.sqrt(2)
            out.append(e)
        for j, k in itertools.combinations(range(d), 2):
            e = np.zeros((d, d), dtype=complex)
            e[j, k], e[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            out.append(e)
        for l in range(1, d):
            diag = [1.0] * l + [-float(l)] + [0.0] * (d - l - 1)
            out.append(np.diag(diag) / np.sqrt(l * (l + 1)))
        return out

    return np.array([[np.trace(rho @ np.kron(x, y)).real for y in basis(n)] for x in basis(m)])


_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

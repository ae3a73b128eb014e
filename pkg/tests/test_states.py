import numpy as np
import pytest

from conftest import assert_close
from gqdprotect.linalg import is_density_matrix, partial_trace
from gqdprotect.states import (FAMILIES, bell_qutrit, family_state, horodecki, level_index,
                               pair_index, projector, random_density, random_unitary,
                               sigma_minus, sigma_plus, werner)


def test_index_convention():
    assert [level_index(k) for k in (2, 1, 0)] == [0, 1, 2]
    assert pair_index(2, 2) == 0 and pair_index(0, 0) == 8 and pair_index(1, 0) == 5
    with pytest.raises(ValueError):
        level_index(3)


def test_bell_state():
    b = bell_qutrit()
    assert_close(b @ b, b, 1e-15)
    for k in (0, 1, 2):
        assert b[pair_index(k, k), pair_index(k, k)] == pytest.approx(1 / 3)


def test_werner_examples():
    assert_close(werner(0.0), np.eye(9) / 9, 0)
    assert_close(werner(1.0), bell_qutrit(), 0)
    for eta in (0.3, 0.7):
        assert is_density_matrix(werner(eta))
    with pytest.raises(ValueError):
        werner(1.2)


def test_sigma_components():
    sp, sm = sigma_plus(), sigma_minus()
    assert sp[pair_index(0, 1), pair_index(0, 1)] == pytest.approx(1 / 3)
    assert sm[pair_index(1, 0), pair_index(1, 0)] == pytest.approx(1 / 3)
    assert_close(sp.T.reshape(3, 3, 3, 3).transpose(1, 0, 3, 2).reshape(9, 9), sm, 0)


def test_horodecki_examples():
    for alpha in (0.0, 1.0, 2.5, 5.0):
        rho = horodecki(alpha)
        assert is_density_matrix(rho)
        assert_close(partial_trace(rho, (3, 3), "A"), np.eye(3) / 3, 1e-15)
    with pytest.raises(ValueError):
        horodecki(-0.1)


def test_random_states_seeded():
    a, b = random_density(5, 9), random_density(5, 9)
    assert_close(a, b, 0)
    assert is_density_matrix(a)
    assert np.max(np.abs(a - random_density(6, 9))) > 1e-3
    u = random_unitary(5, 4)
    assert_close(u @ u.conj().T, np.eye(4), 1e-14)


def test_family_state_dispatch():
    assert set(FAMILIES) == {"werner", "horodecki"}
    assert_close(family_state("horodecki", 1.5), horodecki(1.5), 0)
    with pytest.raises(ValueError):
        family_state("ghz", 0.5)
    assert projector(2, 2)[0, 0] == 1

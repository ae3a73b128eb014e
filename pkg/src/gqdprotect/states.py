"""Named two-qutrit states and seeded random density matrices.

Qutrit levels are labelled by energy, ``|2>`` and ``|1>`` excited and ``|0>``
the ground state, and stored at array indices 0, 1, 2 respectively.
"""

from __future__ import annotations

import numpy as np

GROUND = 2


def level_index(level: int) -> int:
    """Array index of qutrit level ``|level>``."""
    if level not in (0, 1, 2):
        raise ValueError(f"qutrit level must be 0, 1 or 2, got {level}")
    return 2 - level


def pair_index(a: int, b: int) -> int:
    """Array index of the two-qutrit product ket ``|a b>``."""
    return 3 * level_index(a) + level_index(b)


def projector(*labels: int) -> np.ndarray:
    """``|labels><labels|`` for one qutrit (one label) or two qutrits (two labels)."""
    if len(labels) == 1:
        k, dim = level_index(labels[0]), 3
    elif len(labels) == 2:
        k, dim = pair_index(*labels), 9
    else:
        raise ValueError("expected one or two level labels")
    out = np.zeros((dim, dim), dtype=complex)
    out[k, k] = 1.0
    return out


def bell_qutrit() -> np.ndarray:
    """``|psi0><psi0|`` with ``|psi0> = (|22> + |11> + |00>)/sqrt(3)``."""
    psi = np.zeros(9, dtype=complex)
    for level in (2, 1, 0):
        psi[pair_index(level, level)] = 1.0 / np.sqrt(3.0)
    return np.outer(psi, psi.conj())


def ground_ground() -> np.ndarray:
    return projector(0, 0)


def werner(eta: float) -> np.ndarray:
    """Two-qutrit Werner state ``(1-eta) I/9 + eta |psi0><psi0|``."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    return (1.0 - eta) * np.eye(9, dtype=complex) / 9.0 + eta * bell_qutrit()


def _sigma(kets) -> np.ndarray:
    return sum(projector(a, b) for a, b in kets) / 3.0


def sigma_plus() -> np.ndarray:
    return _sigma([(0, 1), (1, 2), (2, 0)])


def sigma_minus() -> np.ndarray:
    return _sigma([(1, 0), (2, 1), (0, 2)])


def horodecki(alpha: float) -> np.ndarray:
    """Horodecki two-qutrit family, separable for 2 <= alpha <= 3."""
    if not 0.0 <= alpha <= 5.0:
        raise ValueError(f"alpha must lie in [0, 5], got {alpha}")
    return (2.0 / 7.0) * bell_qutrit() + (alpha / 7.0) * sigma_plus() \
        + ((5.0 - alpha) / 7.0) * sigma_minus()


def random_density(seed: int, dim: int) -> np.ndarray:
    """Ginibre random state ``G G^dag / Tr(G G^dag)``.

    ``G`` has i.i.d. standard complex Gaussian entries drawn from numpy's
    PCG64 generator seeded with ``seed``, real parts first, then imaginary.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    rng = np.random.Generator(np.random.PCG64(seed))
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(seed: int, dim: int) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


FAMILIES = {
    "werner": (werner, (0.0, 1.0)),
    "horodecki": (horodecki, (0.0, 5.0)),
}


def family_state(family: str, param: float) -> np.ndarray:
    try:
        builder, _ = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown state family {family!r}") from None
    return builder(param)

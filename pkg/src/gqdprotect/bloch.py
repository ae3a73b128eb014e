"""Generalized Gell-Mann bases, Bloch decomposition and geometric discord.

Generator order for ``gellmann(m)`` is fixed: the symmetric matrices
``E_jk + E_kj`` for ``j < k``, then the antisymmetric ``-i(E_jk - E_kj)``
for ``j < k`` (both lexicographic in ``(j, k)``), then the diagonal ones
``sqrt(2/(l(l+1))) * (sum_{j<l} E_jj - l E_ll)`` for ``l = 1 .. m-1``.
For ``m = 3`` the conventional lambda_3 and lambda_8 sit at positions 6 and 7.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError
from .linalg import as_square, hermitian_eigenvalues

IMAG_TOL = 1e-12


@lru_cache(maxsize=None)
def _gellmann_cached(m: int) -> np.ndarray:
    sym, asym, diag = [], [], []
    for j in range(m):
        for k in range(j + 1, m):
            s = np.zeros((m, m), dtype=complex)
            s[j, k] = s[k, j] = 1.0
            sym.append(s)
            a = np.zeros((m, m), dtype=complex)
            a[j, k] = -1j
            a[k, j] = 1j
            asym.append(a)
    for l in range(1, m):
        d = np.zeros(m)
        d[:l] = 1.0
        d[l] = -l
        diag.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * d).astype(complex))
    out = np.array(sym + asym + diag)
    out.setflags(write=False)
    return out


def gellmann(m: int) -> np.ndarray:
    """The ``m**2 - 1`` generalized Gell-Mann matrices, shape ``(m**2-1, m, m)``.

    Normalized so that ``Tr(g_i g_j) = 2 delta_ij``. The returned array is
    read-only and shared between calls.
    """
    if int(m) != m or m < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {m}")
    return _gellmann_cached(int(m))


def antisymmetric_mask(m: int) -> np.ndarray:
    """Boolean mask marking the imaginary (antisymmetric) generators."""
    k = m * (m - 1) // 2
    mask = np.zeros(m * m - 1, dtype=bool)
    mask[k:2 * k] = True
    return mask


def orthonormal_basis(m: int) -> np.ndarray:
    """``I/sqrt(m)`` followed by ``g_i/sqrt(2)``: Hermitian, ``Tr(X_i X_j) = delta_ij``."""
    return np.concatenate([np.eye(m, dtype=complex)[None] / np.sqrt(m),
                           gellmann(m) / np.sqrt(2.0)])


def _pair_expectations(rho, m: int, n: int, ops_a: np.ndarray, ops_b: np.ndarray) -> np.ndarray:
    """Matrix of ``Tr(rho A_i (x) B_j)`` checked to be real."""
    rho = as_square(rho, "rho")
    if rho.shape[0] != m * n:
        raise DimensionError(f"rho has dimension {rho.shape[0]}, expected {m}*{n}")
    r = rho.reshape(m, n, m, n)
    # Tr(rho (A (x) B)) = sum rho[i k, j l] A[j, i] B[l, k]
    vals = np.einsum("ikjl,aji,blk->ab", r, ops_a, ops_b, optimize=True)
    if np.max(np.abs(vals.imag), initial=0.0) > IMAG_TOL:
        raise ValueError("expectation values are not real; is rho Hermitian?")
    return vals.real


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors ``x``, ``y`` and correlation tensor ``T`` of a bipartite state."""

    m: int
    n: int
    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    def reconstruct(self) -> np.ndarray:
        ga, gb = gellmann(self.m), gellmann(self.n)
        ia, ib = np.eye(self.m), np.eye(self.n)
        rho = np.kron(ia, ib).astype(complex)
        rho += np.kron(np.tensordot(self.x, ga, axes=1), ib)
        rho += np.kron(ia, np.tensordot(self.y, gb, axes=1))
        rho += np.einsum("ij,iab,jcd->acbd", self.T, ga, gb).reshape(self.m * self.n, -1)
        return rho / (self.m * self.n)


def bloch_decompose(rho, m: int, n: int) -> BlochDecomposition:
    ga, gb = gellmann(m), gellmann(n)
    ia, ib = np.eye(m, dtype=complex)[None], np.eye(n, dtype=complex)[None]
    x = (m / 2.0) * _pair_expectations(rho, m, n, ga, ib)[:, 0]
    y = (n / 2.0) * _pair_expectations(rho, m, n, ia, gb)[0, :]
    T = (m * n / 4.0) * _pair_expectations(rho, m, n, ga, gb)
    return BlochDecomposition(m, n, x, y, T)


def correlation_matrix(rho, m: int, n: int) -> np.ndarray:
    """Real ``m**2 x n**2`` matrix ``C[i, j] = Tr(rho X_i (x) Y_j)`` in the orthonormal bases."""
    return _pair_expectations(rho, m, n, orthonormal_basis(m), orthonormal_basis(n))


def gqd_lower_bound_raw(rho, m: int, n: int) -> float:
    """Sum of all but the ``m`` largest eigenvalues of ``C C^T`` (may be slightly negative)."""
    c = correlation_matrix(rho, m, n)
    mu = hermitian_eigenvalues(c @ c.T)
    return float(np.sum(mu[m:]))


def gqd_lower_bound(rho, m: int = 3, n: int = 3) -> float:
    """Geometric-discord lower bound, clamped at zero."""
    return max(0.0, gqd_lower_bound_raw(rho, m, n)) + 0.0


def gqd_two_qubit(rho) -> float:
    """Exact geometric discord of a two-qubit state from its Pauli expansion."""
    rho = as_square(rho, "rho")
    if rho.shape[0] != 4:
        raise DimensionError(f"two-qubit state must be 4x4, got {rho.shape}")
    b = bloch_decompose(rho, 2, 2)
    k = np.outer(b.x, b.x) + b.T @ b.T.T
    mu_max = hermitian_eigenvalues(k)[0]
    return float((b.x @ b.x + np.sum(b.T ** 2) - mu_max) / 4.0)

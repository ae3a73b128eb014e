"""Dense complex matrix kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` (or
float64 where the values are provably real). Bipartite operators use the
row-major Kronecker ordering ``index = n * i + j`` for subsystem indices
``i`` (A, dimension m) and ``j`` (B, dimension n).
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DimensionError, InvalidStateError

DEFAULT_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a finite square complex array, raising on bad input."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def tensor(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i1*nb + i2, j1*nb + j2)`` is ``a[i1,j1] * b[i2,j2]``."""
    return np.kron(as_square(a, "a"), as_square(b, "b"))


def _split(rho, dims: tuple[int, int]) -> np.ndarray:
    rho = as_square(rho, "rho")
    m, n = dims
    if m < 1 or n < 1 or rho.shape[0] != m * n:
        raise DimensionError(f"rho has dimension {rho.shape[0]}, expected {m}*{n}")
    return rho.reshape(m, n, m, n)


def partial_trace(rho, dims: tuple[int, int], keep: str = "A") -> np.ndarray:
    """Reduced matrix of a bipartite operator; ``keep`` selects the surviving factor."""
    r = _split(rho, dims)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, dims: tuple[int, int], side: str = "B") -> np.ndarray:
    """Transpose the ``side`` factor of a bipartite operator."""
    r = _split(rho, dims)
    m, n = dims
    if side == "B":
        out = r.transpose(0, 3, 2, 1)
    elif side == "A":
        out = r.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return out.reshape(m * n, m * n)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint pair sets covering every (p, q), p < q, once per cycle."""
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for k in range(size // 2):
            a, b = players[k], players[size - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues_symmetric(a: np.ndarray, tol: float = JACOBI_TOL,
                                 max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Rotations are applied in round-robin order, so each round annihilates
    ``n // 2`` disjoint off-diagonal pairs with a single orthogonal similarity.
    Iteration stops once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||a||_F)``.

    Returns the eigenvalues sorted non-increasing.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    a = 0.5 * (a + a.T)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    rounds = _round_robin(n)
    eye = np.eye(n)
    offdiag = ~np.eye(n, dtype=bool)

    def off_norm(x):
        return float(np.linalg.norm(x[offdiag]))

    for _ in range(max_sweeps):
        if off_norm(a) < threshold:
            return np.sort(a.diagonal())[::-1]
        for ps, qs in rounds:
            apq = a[ps, qs]
            active = apq != 0.0
            if not np.any(active):
                continue
            ps, qs, apq = ps[active], qs[active], apq[active]
            theta = (a[qs, qs] - a[ps, ps]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = eye.copy()
            rot[ps, ps] = c
            rot[qs, qs] = c
            rot[ps, qs] = s
            rot[qs, ps] = -s
            a = rot.T @ a @ rot
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
    if off_norm(a) < threshold:
        return np.sort(a.diagonal())[::-1]
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(h, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted non-increasing.

    Complex input ``A + iB`` is embedded as the real symmetric
    ``[[A, -B], [B, A]]``, whose spectrum is that of ``h`` with every value
    doubled; one copy of each pair is returned.
    """
    h = as_square(h, "h")
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - dagger(h))) > tol * scale:
        raise InvalidStateError("matrix is not Hermitian within tolerance")
    h = 0.5 * (h + dagger(h))
    re, im = h.real, h.imag
    if not np.any(im):
        return jacobi_eigenvalues_symmetric(re)
    embedded = np.block([[re, -im], [im, re]])
    return jacobi_eigenvalues_symmetric(embedded)[::2].copy()


def check_density_matrix(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Raises InvalidStateError unless ``rho`` is Hermitian, has unit trace and
    no eigenvalue below ``-tol``, each within ``tol``.
    """
    rho = as_square(rho, "rho")
    herm_err = float(np.max(np.abs(rho - dagger(rho))))
    if herm_err > tol:
        raise InvalidStateError(f"not Hermitian: max asymmetry {herm_err:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"trace {tr.real:.15g} differs from 1")
    lo = float(np.linalg.eigvalsh(0.5 * (rho + dagger(rho)))[0])
    if lo < -tol:
        raise InvalidStateError(f"negative eigenvalue {lo:.3e}")
    return rho


def is_density_matrix(rho, tol: float = DEFAULT_TOL) -> bool:
    try:
        check_density_matrix(rho, tol)
    except (InvalidStateError, DimensionError, ValueError):
        return False
    return True


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b`` for Hermitian arguments."""
    diff = as_square(a) - as_square(b)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(0.5 * (diff + dagger(diff))))))

"""Amplitude damping of a V-type qutrit coupled to a Lorentzian reservoir.

The two excited levels decay through two eigenmodes (labelled ``+`` and
``-``) with rates ``gamma_pm``. Each mode amplitude evolves as

    G(t) = exp(-lam t / 2) * (cosh(d t / 2) + lam / d * sinh(d t / 2)),
    d = sqrt(lam**2 - 2 lam gamma_pm),

evaluated in complex arithmetic so the oscillating (``lam < 2 gamma``) and
overdamped regimes share one code path. Detuning is fixed at zero. Rates
and times are in units of a reference rate, time is reported as ``gamma t``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionError
from .linalg import as_square, dagger

SERIES_CUTOFF = 1e-6
KRAUS_TOL = 1e-12


@dataclass(frozen=True)
class ReservoirParams:
    gamma1: float = 1.0
    gamma2: float = 1.0
    lam: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise ValueError("decay rates must be positive")
        if not self.lam > 0:
            raise ValueError("spectral width must be positive")
        if not abs(self.theta) <= 1:
            raise ValueError("theta must lie in [-1, 1]")


@dataclass(frozen=True)
class StructureConstants:
    h: float
    gamma_plus: float
    gamma_minus: float
    d_plus: complex
    d_minus: complex


def structure_constants(r: ReservoirParams) -> StructureConstants:
    h = math.sqrt((r.gamma1 - r.gamma2) ** 2 + 4.0 * r.gamma1 * r.gamma2 * r.theta ** 2)
    gp = 0.5 * (r.gamma1 + r.gamma2 + h)
    gm = 0.5 * (r.gamma1 + r.gamma2 - h)
    gm = max(gm, 0.0)  # rounding at theta = +-1
    dp = cmath.sqrt(r.lam ** 2 - 2.0 * r.lam * gp)
    dm = cmath.sqrt(r.lam ** 2 - 2.0 * r.lam * gm)
    return StructureConstants(h, gp, gm, dp, dm)


def mode_amplitude(gamma_mode: float, lam: float, t):
    """Closed-form decay amplitude of one eigenmode; ``t`` may be an array."""
    t = np.asarray(t, dtype=float)
    d = complex(cmath.sqrt(lam ** 2 - 2.0 * lam * gamma_mode))
    x = d * t / 2.0
    near = np.abs(d) * t < SERIES_CUTOFF
    safe_x = np.where(near, 1.0, x)
    # lam/d * sinh(x) written as (lam t / 2) * sinh(x)/x: no 1/d blow-up near critical damping
    sinhc = np.where(near, 1.0, np.sinh(safe_x) / safe_x)
    cosh = np.where(near, 1.0, np.cosh(safe_x))
    return np.exp(-lam * t / 2.0) * (cosh + lam * t / 2.0 * sinhc)


@dataclass(frozen=True)
class DecaySnapshot:
    """Mode amplitudes ``G+(t)``, ``G-(t)`` at one time."""

    t: float
    g_plus: complex
    g_minus: complex

    @property
    def abs_plus(self) -> float:
        return abs(self.g_plus)

    @property
    def abs_minus(self) -> float:
        return abs(self.g_minus)

    @property
    def phase_plus(self) -> float:
        return cmath.phase(self.g_plus)

    @property
    def phase_minus(self) -> float:
        return cmath.phase(self.g_minus)


def decay_functions(r: ReservoirParams, t: float) -> DecaySnapshot:
    if t < 0:
        raise ValueError("time must be non-negative")
    sc = structure_constants(r)
    return DecaySnapshot(
        float(t),
        complex(mode_amplitude(sc.gamma_plus, r.lam, t)),
        complex(mode_amplitude(sc.gamma_minus, r.lam, t)),
    )


def _rk4_mode(gamma_mode: float, lam: float, t_max: float, steps: int) -> np.ndarray:
    # Pseudomode form of the Lorentzian memory kernel:
    #   c' = -w,   w' = (lam gamma / 2) c - lam w,   c(0) = 1, w(0) = 0
    # where w(t) = (lam gamma / 2) int_0^t exp(-lam (t - s)) c(s) ds.
    k = 0.5 * lam * gamma_mode
    dt = t_max / steps

    def rhs(y):
        c, w = y
        return np.array([-w, k * c - lam * w])

    y = np.array([1.0, 0.0])
    out = np.empty(steps + 1)
    out[0] = 1.0
    for i in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y[0]
    return out


def decay_ode_oracle(r: ReservoirParams, t_max: float, steps: int = 4000,
                     check_tol: float = 1e-8):
    """Integrate the memory-kernel amplitude equations with classical RK4.

    Independent of the closed form: the convolution with the exponential
    kernel is turned into an auxiliary (pseudomode) variable and the local
    system is stepped on a uniform grid. The run is repeated with half the
    step; if the two disagree by more than ``check_tol`` on the shared grid a
    ConvergenceError is raised.

    Returns ``(t, g_plus, g_minus)`` arrays of length ``steps + 1``.
    """
    sc = structure_constants(r)
    t = np.linspace(0.0, t_max, steps + 1)
    curves = []
    for gamma_mode in (sc.gamma_plus, sc.gamma_minus):
        coarse = _rk4_mode(gamma_mode, r.lam, t_max, steps)
        fine = _rk4_mode(gamma_mode, r.lam, t_max, 2 * steps)[::2]
        if np.max(np.abs(coarse - fine)) > check_tol:
            raise ConvergenceError("RK4 step too coarse for the requested accuracy")
        curves.append(fine)
    return t, curves[0], curves[1]


def diagonalizing_unitary(r: ReservoirParams) -> np.ndarray:
    """Rotation of the excited pair onto the decay eigenmodes, ground state fixed.

    When ``h == 0`` (equal rates, no interference) the modes are already
    decoupled and the identity is returned.
    """
    h = structure_constants(r).h
    if h == 0.0:
        return np.eye(3, dtype=complex)
    diff = r.gamma1 - r.gamma2
    a = math.sqrt(max(h + diff, 0.0) / (2.0 * h))
    b = math.sqrt(max(h - diff, 0.0) / (2.0 * h))
    return np.array([[a, -b, 0.0], [b, a, 0.0], [0.0, 0.0, 1.0]], dtype=complex)


def kraus_operators(snapshot: DecaySnapshot) -> list[np.ndarray]:
    ap, am = snapshot.abs_plus, snapshot.abs_minus
    if ap > 1.0 + KRAUS_TOL or am > 1.0 + KRAUS_TOL:
        raise ValueError("decay amplitude exceeds 1 in modulus")
    k1 = np.diag([snapshot.g_plus, snapshot.g_minus, 1.0]).astype(complex)
    k2 = np.zeros((3, 3), dtype=complex)
    k2[2, 0] = math.sqrt(max(0.0, 1.0 - ap * ap))
    k3 = np.zeros((3, 3), dtype=complex)
    k3[2, 1] = math.sqrt(max(0.0, 1.0 - am * am))
    return [k1, k2, k3]


def two_qutrit_kraus(snapshot: DecaySnapshot) -> list[np.ndarray]:
    ks = kraus_operators(snapshot)
    return [np.kron(a, b) for a in ks for b in ks]


def apply_kraus(rho: np.ndarray, ops) -> np.ndarray:
    return sum(k @ rho @ dagger(k) for k in ops)


def apply_channel_single(rho0, r: ReservoirParams, t: float) -> np.ndarray:
    rho0 = as_square(rho0, "rho0")
    if rho0.shape[0] != 3:
        raise DimensionError("single-qutrit channel needs a 3x3 input")
    u = diagonalizing_unitary(r)
    rotated = u @ rho0 @ dagger(u)
    evolved = apply_kraus(rotated, kraus_operators(decay_functions(r, t)))
    return dagger(u) @ evolved @ u


def apply_channel_two_qutrit(rho0, r: ReservoirParams, t: float) -> np.ndarray:
    """Both qutrits damped by independent, identical reservoirs."""
    rho0 = as_square(rho0, "rho0")
    if rho0.shape[0] != 9:
        raise DimensionError("two-qutrit channel needs a 9x9 input")
    u = diagonalizing_unitary(r)
    uu = np.kron(u, u)
    rotated = uu @ rho0 @ dagger(uu)
    evolved = apply_kraus(rotated, two_qutrit_kraus(decay_functions(r, t)))
    return dagger(uu) @ evolved @ uu

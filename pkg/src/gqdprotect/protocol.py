"""Weak measurement and measurement reversal (WMQMR) protection.

The pipeline for one qutrit is

    rotate into decay modes (U) -> weak measurement M_w -> damping channel
    -> reversal M_r -> phase removal V -> rotate back (U^dag) -> normalize

and the two-qutrit version uses the two-fold tensor power of every operator.
Every step is linear, so the state is kept unnormalized throughout and
divided by its trace once at the end; the trace is the post-selection
success probability.

The closed forms for protected Werner and Horodecki states assume equal
decay rates. They are written in the basis where the excited pair is
rotated by the 45 degree mode unitary; with ``theta = 0`` that unitary is
the identity, and the closed forms agree with the pipeline only for
``|G+| (1-p) == |G-| (1-q)`` factors that make ``s4`` vanish (e.g. ``p == q``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateOutcomeError, DimensionError
from .linalg import as_square, dagger
from .reservoir import (DecaySnapshot, ReservoirParams, decay_functions,
                        diagonalizing_unitary, kraus_operators)
from .states import horodecki, pair_index, projector, werner

# Only underflow makes the output unnormalizable; a tiny success probability is
# still an exact rescaling of a well-defined state.
MIN_SUCCESS = np.finfo(float).tiny


@dataclass(frozen=True)
class WeakMeasurementParams:
    p: float = 0.0
    q: float | None = None

    def __post_init__(self):
        if self.q is None:
            object.__setattr__(self, "q", self.p)
        for name in ("p", "q"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")


@dataclass(frozen=True)
class ReversalParams:
    """Reversal strengths ``p_r``, ``q_r``.

    ``keep_p = 1 - p_r`` and ``keep_q = 1 - q_r`` are stored separately
    because the optimal strengths approach 1 and the complements would be
    lost to cancellation.
    """

    p_r: float = 0.0
    q_r: float = 0.0
    keep_p: float = field(default=None)
    keep_q: float = field(default=None)

    def __post_init__(self):
        if self.keep_p is None:
            object.__setattr__(self, "keep_p", 1.0 - self.p_r)
        if self.keep_q is None:
            object.__setattr__(self, "keep_q", 1.0 - self.q_r)
        # Validate the complements: near-complete decay rounds 1 - keep to 1.
        for name in ("keep_p", "keep_q"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class ProtocolResult:
    state: np.ndarray
    norm: float
    success_prob: float


def optimal_reversal(p: float, q: float, snapshot: DecaySnapshot) -> ReversalParams:
    keep_p = (1.0 - p) * snapshot.abs_plus ** 2
    keep_q = (1.0 - q) * snapshot.abs_minus ** 2
    return ReversalParams(1.0 - keep_p, 1.0 - keep_q, keep_p, keep_q)


def _lift(op: np.ndarray, dim: int) -> np.ndarray:
    if dim == 3:
        return op
    if dim == 9:
        return np.kron(op, op)
    raise DimensionError(f"expected a 3x3 or 9x9 matrix, got dimension {dim}")


def _conjugate(rho, op3: np.ndarray) -> np.ndarray:
    rho = as_square(rho, "rho")
    op = _lift(op3, rho.shape[0])
    return op @ rho @ dagger(op)


def weak_measurement_operator(w: WeakMeasurementParams) -> np.ndarray:
    return np.diag([math.sqrt(1.0 - w.p), math.sqrt(1.0 - w.q), 1.0]).astype(complex)


def reversal_operator(rv: ReversalParams) -> np.ndarray:
    # (0, 0) carries q_r and (1, 1) carries p_r: each reversal compensates the
    # other mode's weak measurement so the no-jump branch becomes proportional to V.
    return np.diag([math.sqrt(rv.keep_q), math.sqrt(rv.keep_p),
                    math.sqrt(rv.keep_q * rv.keep_p)]).astype(complex)


def phase_operator(snapshot: DecaySnapshot) -> np.ndarray:
    return np.diag([np.exp(1j * snapshot.phase_plus), np.exp(1j * snapshot.phase_minus), 1.0])


def weak_measure(rho, w: WeakMeasurementParams) -> np.ndarray:
    """``M_w rho M_w^dag`` (one qutrit) or with ``M_w (x) M_w`` (two qutrits)."""
    return _conjugate(rho, weak_measurement_operator(w))


def reversal_measure(rho, rv: ReversalParams) -> np.ndarray:
    return _conjugate(rho, reversal_operator(rv))


def phase_removal(rho, snapshot: DecaySnapshot) -> np.ndarray:
    """``V^dag rho V`` with ``V = diag(exp(i phi+), exp(i phi-), 1)``."""
    return _conjugate(rho, dagger(phase_operator(snapshot)))


def _require_equal_rates(r: ReservoirParams):
    if r.gamma1 != r.gamma2:
        raise ValueError("the protection protocol assumes gamma1 == gamma2")


def _protect(rho0, r, w, t, dim, reversal, remove_phase) -> ProtocolResult:
    _require_equal_rates(r)
    rho0 = as_square(rho0, "rho0")
    if rho0.shape[0] != dim:
        raise DimensionError(f"expected a {dim}x{dim} input, got {rho0.shape}")
    snap = decay_functions(r, t)
    u = _lift(diagonalizing_unitary(r), dim)
    rv = optimal_reversal(w.p, w.q, snap) if reversal is None else reversal

    rho = u @ rho0 @ dagger(u)
    rho = weak_measure(rho, w)
    ks = kraus_operators(snap)
    ops = ks if dim == 3 else [np.kron(a, b) for a in ks for b in ks]
    rho = sum(k @ rho @ dagger(k) for k in ops)
    rho = reversal_measure(rho, rv)
    if remove_phase:
        rho = phase_removal(rho, snap)
    rho = dagger(u) @ rho @ u

    success = float(np.trace(rho).real)
    if not success > MIN_SUCCESS:
        raise DegenerateOutcomeError(f"post-selection probability {success:.3e} is zero")
    state = rho / success
    state = 0.5 * (state + dagger(state))
    return ProtocolResult(state, success, success)


def protect_single(rho0, r: ReservoirParams, w: WeakMeasurementParams, t: float, *,
                   reversal: ReversalParams | None = None,
                   remove_phase: bool = True) -> ProtocolResult:
    """Run the full protection pipeline on one qutrit.

    ``reversal`` overrides the optimal reversal strengths and
    ``remove_phase=False`` skips the phase correction; both exist to compare
    against the bare channel.
    """
    return _protect(rho0, r, w, t, 3, reversal, remove_phase)


def protect_two_qutrit(rho0, r: ReservoirParams, w: WeakMeasurementParams, t: float, *,
                       reversal: ReversalParams | None = None,
                       remove_phase: bool = True) -> ProtocolResult:
    return _protect(rho0, r, w, t, 9, reversal, remove_phase)


@dataclass(frozen=True)
class LeakTerms:
    """Population transferred by decay-then-reversal, per unit of ``R**2``.

    ``u`` and ``v`` are the weights with which the ``+`` and ``-`` modes leak
    to the ground level.
    """

    u: float
    v: float

    @property
    def s1(self) -> float:
        return self.u ** 2 + self.v ** 2

    @property
    def s2(self) -> float:
        return (self.u + self.v) ** 2

    @property
    def s3(self) -> float:
        return self.u + self.v

    @property
    def s4(self) -> float:
        return self.v - self.u


def leak_terms(w: WeakMeasurementParams, snapshot: DecaySnapshot) -> LeakTerms:
    return LeakTerms((1.0 - w.p) * (1.0 - snapshot.abs_plus ** 2),
                     (1.0 - w.q) * (1.0 - snapshot.abs_minus ** 2))


def no_jump_weight(w: WeakMeasurementParams, snapshot: DecaySnapshot) -> float:
    """``R = (1-p)(1-q)|G+|^2 |G-|^2``, the single-qutrit scale factor."""
    return (1.0 - w.p) * (1.0 - w.q) * snapshot.abs_plus ** 2 * snapshot.abs_minus ** 2


def closed_form_single(rho0, r: ReservoirParams, w: WeakMeasurementParams, t: float) -> ProtocolResult:
    """``(rho0 + f' |0><0|) / (1 + f')`` with ``f'`` the mode-weighted leak."""
    _require_equal_rates(r)
    rho0 = as_square(rho0, "rho0")
    snap = decay_functions(r, t)
    u = diagonalizing_unitary(r)
    modes = u @ rho0 @ dagger(u)
    lt = leak_terms(w, snap)
    f_prime = lt.u * modes[0, 0].real + lt.v * modes[1, 1].real
    big_r = no_jump_weight(w, snap)
    state = (rho0 + f_prime * projector(0)) / (1.0 + f_prime)
    norm = big_r * (1.0 + f_prime)
    return ProtocolResult(state, norm, norm)


def _symmetric_pairs(coef: float, kets) -> np.ndarray:
    out = np.zeros((9, 9), dtype=complex)
    for a, b in kets:
        out[pair_index(*a), pair_index(*b)] += coef
    return out


def _cross_terms(coef: float) -> np.ndarray:
    # |10><20| + |01><02| + h.c.
    return _symmetric_pairs(coef, [((1, 0), (2, 0)), ((0, 1), (0, 2)),
                                   ((2, 0), (1, 0)), ((0, 2), (0, 1))])


def _single_excitation_diag(coef: float) -> np.ndarray:
    return _symmetric_pairs(coef, [((2, 0), (2, 0)), ((0, 2), (0, 2)),
                                   ((1, 0), (1, 0)), ((0, 1), (0, 1))])


def closed_form_werner(eta: float, r: ReservoirParams, w: WeakMeasurementParams,
                       t: float) -> ProtocolResult:
    _require_equal_rates(r)
    snap = decay_functions(r, t)
    lt = leak_terms(w, snap)
    big_r = no_jump_weight(w, snap)
    extra = (eta / 3.0 * lt.s1 + (1.0 - eta) / 9.0 * (lt.s2 + 2.0 * lt.s3)) * projector(0, 0)
    extra += _single_excitation_diag((eta + 2.0) / 18.0 * lt.s3)
    extra += _cross_terms(eta / 6.0 * lt.s4)
    scale = 1.0 + eta / 3.0 * lt.s1 + (1.0 - eta) / 9.0 * lt.s2 + 2.0 / 3.0 * lt.s3
    state = (werner(eta) + extra) / scale
    norm = big_r ** 2 * scale
    return ProtocolResult(state, norm, norm)


def closed_form_horodecki(alpha: float, r: ReservoirParams, w: WeakMeasurementParams,
                          t: float) -> ProtocolResult:
    """Protected Horodecki state assembled term by term.

    The alpha-weighted leak lands on ``|02>`` and ``|10>``: decay of the
    ``|12>`` component (weight alpha) on either side produces exactly those
    kets, while ``|20>`` and ``|01>`` are fed by the ``(5 - alpha)`` weight.
    """
    _require_equal_rates(r)
    snap = decay_functions(r, t)
    lt = leak_terms(w, snap)
    big_r = no_jump_weight(w, snap)
    extra = (2.0 * lt.s1 + 1.25 * lt.s2 + 5.0 * lt.s3) / 21.0 * projector(0, 0)
    extra += _single_excitation_diag(lt.s3 / 21.0)
    extra += _cross_terms(lt.s4 / 21.0)
    tilt = alpha / 42.0 * lt.s3
    for kets, sign in ((((0, 2), (1, 0)), 1.0), (((2, 0), (0, 1)), -1.0)):
        for ket in kets:
            extra[pair_index(*ket), pair_index(*ket)] += sign * tilt
    for ket in ((2, 0), (0, 1)):
        extra[pair_index(*ket), pair_index(*ket)] += 5.0 / 42.0 * lt.s3
    scale = 1.0 + (2.0 * lt.s1 + 1.25 * lt.s2 + 14.0 * lt.s3) / 21.0
    state = (horodecki(alpha) + extra) / scale
    norm = big_r ** 2 * scale
    return ProtocolResult(state, norm, norm)

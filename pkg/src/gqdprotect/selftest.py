"""Built-in oracle-equivalence and analytic-value checks.

Each check yields ``(name, error, tolerance)``; a check passes when
``error <= tolerance``. Output is deterministic (no timings, fixed seeds).
"""

from __future__ import annotations

import itertools

import numpy as np

from .bloch import gqd_lower_bound, gqd_two_qubit
from .linalg import partial_transpose, hermitian_eigenvalues
from .protocol import (WeakMeasurementParams, closed_form_horodecki,
                       closed_form_werner, protect_two_qutrit)
from .reservoir import ReservoirParams, decay_ode_oracle, mode_amplitude, structure_constants
from .states import bell_qutrit, horodecki, werner

HEADER = "check,error,tolerance,status"


def _decay_checks():
    for lam, theta in itertools.product((0.1, 1.0), (0.0, 0.5, 1.0)):
        r = ReservoirParams(1.0, 1.0, lam, theta)
        t, gp, gm = decay_ode_oracle(r, 20.0, 2000)
        sc = structure_constants(r)
        err = max(np.max(np.abs(gp - mode_amplitude(sc.gamma_plus, lam, t))),
                  np.max(np.abs(gm - mode_amplitude(sc.gamma_minus, lam, t))))
        yield f"decay_ode lam={lam} theta={theta}", float(err), 1e-6


def _analytic_checks():
    for eta in np.linspace(0.0, 1.0, 11):
        yield f"werner_gqd eta={eta:.1f}", abs(gqd_lower_bound(werner(eta)) - 2 * eta ** 2 / 3), 1e-9
    yield "bell_qutrit_gqd", abs(gqd_lower_bound(bell_qutrit()) - 2.0 / 3.0), 1e-9
    yield "maximally_mixed_gqd", abs(gqd_lower_bound(np.eye(9) / 9.0)), 1e-9
    bell2 = np.zeros(4)
    bell2[[0, 3]] = 1.0 / np.sqrt(2.0)
    yield "two_qubit_bell_gqd", abs(gqd_two_qubit(np.outer(bell2, bell2)) - 0.5), 1e-9
    lo = hermitian_eigenvalues(partial_transpose(werner(0.25), (3, 3)))[-1]
    yield "werner_ppt_boundary", max(0.0, -lo), 1e-12
    for a in (0.0, 1.0, 1.5):
        err = abs(gqd_lower_bound(horodecki(a)) - gqd_lower_bound(horodecki(5.0 - a)))
        yield f"horodecki_symmetry alpha={a}", err, 1e-10


def _closed_form_checks():
    cases = (("werner", werner, closed_form_werner, (0.2, 0.6, 1.0)),
             ("horodecki", horodecki, closed_form_horodecki, (1.0, 2.5, 3.5)))
    for p, lam, t in itertools.product((0.0, 0.5, 0.99), (0.1, 1.0), (0.0, 1.0, 2.0, 5.0, 10.0, 20.0)):
        r = ReservoirParams(1.0, 1.0, lam, 0.0)
        w = WeakMeasurementParams(p)
        for name, build, closed, params in cases:
            err = 0.0
            for param in params:
                a = closed(param, r, w, t)
                b = protect_two_qutrit(build(param), r, w, t)
                err = max(err, np.max(np.abs(a.state - b.state)), abs(a.norm - b.success_prob))
            yield f"closed_form_{name} p={p} lam={lam} gt={t}", float(err), 1e-10


def run_checks():
    for gen in (_decay_checks, _analytic_checks, _closed_form_checks):
        yield from gen()


def report() -> tuple[list[str], bool]:
    lines, ok = [HEADER], True
    for name, err, tol in run_checks():
        passed = err <= tol
        ok &= passed
        lines.append(f"{name},{err:.3e},{tol:.0e},{'PASS' if passed else 'FAIL'}")
    return lines, ok

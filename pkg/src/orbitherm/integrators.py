"""Fixed-step Adams-Bashforth-Moulton 10th-order PECE integrator.

The Adams coefficients are generated at import time from the order
conditions in exact rational arithmetic, so no hand-typed coefficient
table can silently corrupt the scheme.  Startup uses an 8th-order
Runge-Kutta (Cooper-Verner, 11 stages) on substeps small enough that
the seed values are accurate to the corrector's own error level.
"""

import math
from fractions import Fraction

import numpy as np

ABM_ORDER = 10


def adams_bashforth_coefficients(k):
    """Coefficients beta_j of y_{n+1} = y_n + h sum_j beta_j f_{n-j}.

    Solved from sum_j beta_j (-j)^m = 1/(m+1), m = 0..k-1, exactly.
    """
    nodes = [Fraction(-j) for j in range(k)]
    return _solve_order_conditions(nodes)


def adams_moulton_coefficients(k):
    """Coefficients of the k-step-order implicit corrector, nodes +1..-(k-2)."""
    nodes = [Fraction(1 - j) for j in range(k)]
    return _solve_order_conditions(nodes)


def _solve_order_conditions(nodes):
    k = len(nodes)
    a = [[node**m for node in nodes] for m in range(k)]
    rhs = [Fraction(1, m + 1) for m in range(k)]
    coeffs = _solve_fraction_system(a, rhs)
    return np.array([float(c) for c in coeffs])


def _solve_fraction_system(a, b):
    n = len(b)
    a = [row[:] for row in a]
    b = b[:]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = Fraction(1, 1) / a[col][col]
        a[col] = [v * inv for v in a[col]]
        b[col] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                b[r] -= f * b[col]
    return b


AB10 = adams_bashforth_coefficients(ABM_ORDER)
AM10 = adams_moulton_coefficients(ABM_ORDER)

# Cooper-Verner 11-stage, order 8 (entries in sqrt(21))
_S21 = math.sqrt(21.0)


def _cooper_verner_tableau():
    s = _S21
    a = np.zeros((11, 11))
    c = np.array([
        0.0, 0.5, 0.5, (7 + s) / 14, (7 + s) / 14, 0.5,
        (7 - s) / 14, (7 - s) / 14, 0.5, (7 + s) / 14, 1.0,
    ])
    a[1, 0] = 0.5
    a[2, 0] = 0.25
    a[2, 1] = 0.25
    a[3, 0] = 1.0 / 7.0
    a[3, 1] = -(7 + 3 * s) / 98
    a[3, 2] = (21 + 5 * s) / 49
    a[4, 0] = (11 + s) / 84
    a[4, 2] = (18 + 4 * s) / 63
    a[4, 3] = (21 - s) / 252
    a[5, 0] = (5 + s) / 48
    a[5, 2] = (9 + s) / 36
    a[5, 3] = (-231 + 14 * s) / 360
    a[5, 4] = (63 - 7 * s) / 80
    a[6, 0] = (10 - s) / 42
    a[6, 2] = (-432 + 92 * s) / 315
    a[6, 3] = (633 - 145 * s) / 90
    a[6, 4] = (-504 + 115 * s) / 70
    a[6, 5] = (63 - 13 * s) / 35
    a[7, 0] = 1.0 / 14.0
    a[7, 4] = (14 - 3 * s) / 126
    a[7, 5] = (13 - 3 * s) / 63
    a[7, 6] = 1.0 / 9.0
    a[8, 0] = 1.0 / 32.0
    a[8, 4] = (91 - 21 * s) / 576
    a[8, 5] = 11.0 / 72.0
    a[8, 6] = -(385 + 75 * s) / 1152
    a[8, 7] = (63 + 13 * s) / 128
    a[9, 0] = 1.0 / 14.0
    a[9, 4] = 1.0 / 9.0
    a[9, 5] = -(733 + 147 * s) / 2205
    a[9, 6] = (515 + 111 * s) / 504
    a[9, 7] = -(51 + 11 * s) / 56
    a[9, 8] = (132 + 28 * s) / 245
    a[10, 4] = (-42 + 7 * s) / 18
    a[10, 5] = (-18 + 28 * s) / 45
    a[10, 6] = -(273 + 53 * s) / 72
    a[10, 7] = (301 + 53 * s) / 72
    a[10, 8] = (28 - 28 * s) / 45
    a[10, 9] = (49 - 7 * s) / 18
    b = np.zeros(11)
    b[0] = 1.0 / 20.0
    b[7] = 49.0 / 180.0
    b[8] = 16.0 / 45.0
    b[9] = 49.0 / 180.0
    b[10] = 1.0 / 20.0
    return a, b, c


RK8_A, RK8_B, RK8_C = _cooper_verner_tableau()


def rk8_step(rhs, t, y, dt):
    """One Cooper-Verner step."""
    k = np.empty((11,) + np.shape(y))
    k[0] = rhs(t, y)
    for i in range(1, 11):
        yi = y + dt * np.tensordot(RK8_A[i, :i], k[:i], axes=1)
        k[i] = rhs(t + RK8_C[i] * dt, yi)
    return y + dt * np.tensordot(RK8_B, k, axes=1)


def _check_finite(dydt, t):
    if not np.all(np.isfinite(dydt)):
        raise RuntimeError(f"non-finite derivative at t = {t}")


def abm10_integrate(rhs, y0, t_span, dt, observer=None, startup_substeps=10):
    """Integrate y' = rhs(t, y) with the fixed-step ABM-10 PECE scheme.

    The first 9 points are seeded by the RK8 startup on dt/substeps
    substeps; afterwards each step predicts with Adams-Bashforth,
    evaluates, corrects with Adams-Moulton, and re-evaluates (PECE).
    observer(i, t, y), when given, is called at every accepted node
    including the initial one.  Returns the final (t, y); use the
    observer to record trajectories.
    """
    t0, t1 = t_span
    if dt <= 0:
        raise ValueError("dt must be positive")
    n_steps = int(round((t1 - t0) / dt))
    if abs(t0 + n_steps * dt - t1) > 1e-9 * max(abs(t1), 1.0):
        raise ValueError("t_span must be an integer number of steps")
    y = np.array(y0, dtype=float)
    hist = np.empty((ABM_ORDER, y.size))   # f(n), f(n-1), ... newest first
    f = np.asarray(rhs(t0, y), dtype=float)
    _check_finite(f, t0)
    hist[0] = f
    if observer is not None:
        observer(0, t0, y)

    n_seed = min(ABM_ORDER - 1, n_steps)
    for i in range(n_seed):
        sub = dt / startup_substeps
        for j in range(startup_substeps):
            y = rk8_step(rhs, t0 + i * dt + j * sub, y, sub)
        t = t0 + (i + 1) * dt
        f = np.asarray(rhs(t, y), dtype=float)
        _check_finite(f, t)
        hist[1:] = hist[:-1]
        hist[0] = f
        if observer is not None:
            observer(i + 1, t, y)

    for i in range(n_seed, n_steps):
        t = t0 + i * dt
        y_pred = y + dt * (AB10 @ hist)
        f_pred = np.asarray(rhs(t + dt, y_pred), dtype=float)
        _check_finite(f_pred, t + dt)
        y = y + dt * (AM10[0] * f_pred + AM10[1:] @ hist[: ABM_ORDER - 1])
        f = np.asarray(rhs(t + dt, y), dtype=float)
        _check_finite(f, t + dt)
        hist[1:] = hist[:-1]
        hist[0] = f
        if observer is not None:
            observer(i + 1, t + dt, y)
    return t0 + n_steps * dt, y

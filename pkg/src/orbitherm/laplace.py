"""Laplace coefficients b_s^(j)(alpha) and their radial derivatives.

Two independent evaluation routes are provided: periodic-trapezoid
quadrature of the defining integral (spectrally accurate for alpha
bounded away from 1) and the Gauss hypergeometric series.  Derivatives
with respect to alpha come from quadrature of the differentiated
integrand up to fourth order, which is enough to evaluate every kernel
of the disturbing function and its alpha-derivative, plus a guard order
for local Taylor evaluation.

A LaplaceTable caches values at a reference alpha and serves nearby
alphas through the Taylor expansion; the semi-major axes drift only
adiabatically, so refreshes are rare.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import hyp2f1, poch

# (s, j) pairs used by the resonant and secular kernels, in table order
TABLE_PAIRS = ((0.5, 0), (0.5, 1), (0.5, 2), (0.5, 3), (1.5, 1), (1.5, 2))
TABLE_ORDERS = 5          # derivative orders 0..4 stored per pair
_N_QUAD = 4096
# relative alpha window served by one table before a refresh is needed;
# quartic Taylor keeps the kernel error at machine level across it
TABLE_WINDOW = 2e-4


def _check_alpha(alpha):
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")


def _integrand_derivative(s, order, alpha, psi):
    """d^order/d_alpha^order of (1 - 2 alpha cos psi + alpha^2)^(-s)."""
    rho = 1.0 - 2.0 * alpha * np.cos(psi) + alpha * alpha
    u = 2.0 * alpha - 2.0 * np.cos(psi)
    if order == 0:
        return rho ** (-s)
    if order == 1:
        return -s * u * rho ** (-s - 1)
    if order == 2:
        return -2 * s * rho ** (-s - 1) + s * (s + 1) * u**2 * rho ** (-s - 2)
    if order == 3:
        return (
            6 * s * (s + 1) * u * rho ** (-s - 2)
            - s * (s + 1) * (s + 2) * u**3 * rho ** (-s - 3)
        )
    if order == 4:
        return (
            12 * s * (s + 1) * rho ** (-s - 2)
            - 12 * s * (s + 1) * (s + 2) * u**2 * rho ** (-s - 3)
            + s * (s + 1) * (s + 2) * (s + 3) * u**4 * rho ** (-s - 4)
        )
    raise ValueError(f"derivative order {order} not supported")


def laplace_derivative(s, j, alpha, order=0, n_quad=_N_QUAD):
    """d^order b_s^(j) / d_alpha^order by periodic trapezoid quadrature."""
    _check_alpha(alpha)
    psi = np.arange(n_quad) * (2.0 * math.pi / n_quad)
    vals = np.cos(j * psi) * _integrand_derivative(s, order, alpha, psi)
    return 2.0 * float(np.mean(vals))


def _laplace_series(s, j, alpha):
    """Hypergeometric evaluation: b = 2 (s)_j / j! alpha^j F(s, s+j; j+1; a^2)."""
    if alpha == 0.0:
        return 2.0 if j == 0 else 0.0
    lead = 2.0 * poch(s, j) / math.factorial(j) * alpha**j
    return lead * float(hyp2f1(s, s + j, j + 1, alpha * alpha))


def laplace_coefficient(s, j, alpha, method="quadrature"):
    """Laplace coefficient b_s^(j)(alpha).

    method selects the quadrature of the defining integral or the
    hypergeometric series; the two agree to well below 1e-9 and serve
    as mutual checks.
    """
    _check_alpha(alpha)
    j = abs(int(j))
    if method == "quadrature":
        return laplace_derivative(s, j, alpha, order=0)
    if method == "series":
        return _laplace_series(s, j, alpha)
    raise ValueError(f"unknown method {method!r}")


def laplace_derivatives(s, j, alpha):
    """(alpha D b, alpha^2 D^2 b) for the operator forms of the kernels."""
    b1 = laplace_derivative(s, j, alpha, order=1)
    b2 = laplace_derivative(s, j, alpha, order=2)
    return alpha * b1, alpha * alpha * b2


def build_table_values(alpha):
    """Array of shape (len(TABLE_PAIRS), TABLE_ORDERS): b and d^m b/d_alpha^m."""
    _check_alpha(alpha)
    out = np.empty((len(TABLE_PAIRS), TABLE_ORDERS))
    psi = np.arange(_N_QUAD) * (2.0 * math.pi / _N_QUAD)
    cosj = {j: np.cos(j * psi) for _, j in TABLE_PAIRS}
    for i, (s, j) in enumerate(TABLE_PAIRS):
        for m in range(TABLE_ORDERS):
            vals = cosj[j] * _integrand_derivative(s, m, alpha, psi)
            out[i, m] = 2.0 * float(np.mean(vals))
    return out


@dataclass
class LaplaceTable:
    """Taylor cache of the tabulated coefficients around a reference alpha."""

    alpha0: float
    values: np.ndarray          # (pairs, orders)
    window: float = TABLE_WINDOW

    @classmethod
    def build(cls, alpha, window=TABLE_WINDOW):
        return cls(alpha0=float(alpha), values=build_table_values(alpha), window=window)

    def fresh_for(self, alpha):
        return abs(alpha - self.alpha0) <= self.window * self.alpha0

    def refresh(self, alpha):
        self.alpha0 = float(alpha)
        self.values = build_table_values(alpha)

    def evaluate(self, pair_index, alpha, order=0):
        """Taylor value of d^order b / d_alpha^order at alpha."""
        if not self.fresh_for(alpha):
            raise ValueError("stale Laplace table for requested alpha")
        d = alpha - self.alpha0
        row = self.values[pair_index]
        out = 0.0
        # sum_m row[order+m] d^m / m!
        fact = 1.0
        for m in range(TABLE_ORDERS - order):
            if m > 0:
                fact *= m
            out += row[order + m] * d**m / fact
        return out

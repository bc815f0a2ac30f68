"""Compiled kernels for the map sweeps and long coupled integrations.

Mirrors of the reference implementations in disturbing/eom/direct,
restructured for numba.  Every kernel is cross-checked against the pure
Python route in the test suite; the compiled code is the throughput
path, not the source of truth.
"""

import math

import numpy as np
from numba import njit

from .integrators import AB10, AM10, RK8_A, RK8_B, RK8_C

# parameter-vector layout shared by the averaged kernels
P_GM, P_J2, P_J4, P_RP, P_GM5, P_GM2, P_FRES, P_FSEC, P_FOBL, P_FIND, \
    P_K2QP, P_K2Q5, P_K2Q2, P_R5, P_R2 = range(15)

N_STATE = 11
_NQ = 2048
# relative alpha window one table serves; the quartic Taylor holds the
# integrated kernels (orders 0..2) below 5e-7 relative across it (beneath
# the e^2 truncation of the disturbing function itself), wide enough that
# the +-100 km resonant a5 swings of the high-eccentricity scenarios fit
# inside one table instead of forcing hundreds of rebuilds per interval
TABLE_WINDOW = 3e-3

_AB10 = AB10.copy()
_AM10 = AM10.copy()
_RK8_A = RK8_A.copy()
_RK8_B = RK8_B.copy()
_RK8_C = RK8_C.copy()

# (s, j) of the tabulated Laplace coefficients, matching laplace.TABLE_PAIRS
_PAIR_S = np.array([0.5, 0.5, 0.5, 0.5, 1.5, 1.5])
_PAIR_J = np.array([0.0, 1.0, 2.0, 3.0, 1.0, 2.0])


@njit(cache=True)
def build_table(alpha):
    """Laplace coefficients and d^m/d_alpha^m, m = 0..4, by quadrature."""
    out = np.zeros((6, 5))
    dpsi = 2.0 * math.pi / _NQ
    for q in range(_NQ):
        psi = q * dpsi
        cpsi = math.cos(psi)
        rho = 1.0 - 2.0 * alpha * cpsi + alpha * alpha
        u = 2.0 * alpha - 2.0 * cpsi
        for i in range(6):
            s = _PAIR_S[i]
            cj = math.cos(_PAIR_J[i] * psi)
            r1 = rho ** (-s - 1)
            r2 = rho ** (-s - 2)
            r3 = rho ** (-s - 3)
            r4 = rho ** (-s - 4)
            out[i, 0] += cj * rho ** (-s)
            out[i, 1] += cj * (-s * u * r1)
            out[i, 2] += cj * (-2 * s * r1 + s * (s + 1) * u * u * r2)
            out[i, 3] += cj * (6 * s * (s + 1) * u * r2
                               - s * (s + 1) * (s + 2) * u**3 * r3)
            out[i, 4] += cj * (12 * s * (s + 1) * r2
                               - 12 * s * (s + 1) * (s + 2) * u * u * r3
                               + s * (s + 1) * (s + 2) * (s + 3) * u**4 * r4)
    return out * (2.0 / _NQ)


@njit(cache=True, inline="always")
def _teval(vals, alpha0, alpha, pair, order):
    d = alpha - alpha0
    acc = 0.0
    fact = 1.0
    for m in range(5 - order):
        if m > 0:
            fact *= m
        acc += vals[pair, order + m] * d**m / fact
    return acc


@njit(cache=True)
def averaged_rhs(y, params, vals, alpha0):
    """Time derivatives of the 11-vector; mirrors eom.AveragedModel."""
    gm = params[P_GM]
    a5 = y[0]
    z5 = complex(y[1], y[2])
    zeta5 = complex(y[3], y[4])
    a2 = y[5]
    z2 = complex(y[6], y[7])
    zeta2 = complex(y[8], y[9])
    psi = y[10]
    alpha = a5 / a2

    # kernels and alpha-derivatives
    b32_2 = _teval(vals, alpha0, alpha, 5, 0)
    b32_2p = _teval(vals, alpha0, alpha, 5, 1)
    b32_1 = _teval(vals, alpha0, alpha, 4, 0)
    b32_1p = _teval(vals, alpha0, alpha, 4, 1)
    b0_0 = _teval(vals, alpha0, alpha, 0, 0)
    b0_1 = _teval(vals, alpha0, alpha, 0, 1)
    b0_2 = _teval(vals, alpha0, alpha, 0, 2)
    b0_3 = _teval(vals, alpha0, alpha, 0, 3)
    b1_0 = _teval(vals, alpha0, alpha, 1, 0)
    b1_1 = _teval(vals, alpha0, alpha, 1, 1)
    b1_2 = _teval(vals, alpha0, alpha, 1, 2)
    b1_3 = _teval(vals, alpha0, alpha, 1, 3)
    b2_0 = _teval(vals, alpha0, alpha, 2, 0)
    b2_1 = _teval(vals, alpha0, alpha, 2, 1)
    b2_2 = _teval(vals, alpha0, alpha, 2, 2)
    b2_3 = _teval(vals, alpha0, alpha, 2, 3)
    b3_0 = _teval(vals, alpha0, alpha, 3, 0)
    b3_1 = _teval(vals, alpha0, alpha, 3, 1)
    b3_2 = _teval(vals, alpha0, alpha, 3, 2)
    b3_3 = _teval(vals, alpha0, alpha, 3, 3)

    kinc = alpha * b32_2
    kinc_d = b32_2 + alpha * b32_2p
    k4 = 17.0 * b1_0 + 10.0 * alpha * b1_1 + alpha**2 * b1_2
    k4_d = 27.0 * b1_1 + 12.0 * alpha * b1_2 + alpha**2 * b1_3
    k5 = 20.0 * b2_0 + 10.0 * alpha * b2_1 + alpha**2 * b2_2
    k5_d = 30.0 * b2_1 + 12.0 * alpha * b2_2 + alpha**2 * b2_3
    k6 = 21.0 * b3_0 + 10.0 * alpha * b3_1 + alpha**2 * b3_2
    k6_d = 31.0 * b3_1 + 12.0 * alpha * b3_2 + alpha**2 * b3_3

    f1 = 0.5 * kinc
    f4 = k4 / 8.0
    f5 = -k5 / 4.0
    f6 = k6 / 8.0
    f1_d = 0.5 * kinc_d
    f4_d = k4_d / 8.0
    f5_d = -k5_d / 4.0
    f6_d = k6_d / 8.0
    c0 = 0.5 * b0_0
    c1 = (2.0 * alpha * b0_1 + alpha**2 * b0_2) / 8.0
    c2 = -0.5 * alpha * b32_1
    c3 = (2.0 * b1_0 - 2.0 * alpha * b1_1 - alpha**2 * b1_2) / 4.0
    c4 = alpha * b32_1
    c0_d = 0.5 * b0_1
    c1_d = (2.0 * b0_1 + 4.0 * alpha * b0_2 + alpha**2 * b0_3) / 8.0
    c2_d = -0.5 * (b32_1 + alpha * b32_1p)
    c3_d = (-4.0 * alpha * b1_2 - alpha**2 * b1_3) / 4.0
    c4_d = b32_1 + alpha * b32_1p

    E = complex(math.cos(psi), -math.sin(psi))
    pre5 = params[P_GM2] / a2
    pre2 = params[P_GM5] / a2

    f_res = params[P_FRES] != 0.0
    f_sec = params[P_FSEC] != 0.0
    f_obl = params[P_FOBL] != 0.0
    f_ind = params[P_FIND] != 0.0

    dz5_res = complex(0.0, 0.0)
    dz2_res = complex(0.0, 0.0)
    dzeta5_res = complex(0.0, 0.0)
    dzeta2_res = complex(0.0, 0.0)
    b_res5 = b_res2 = 0.0
    d_psi5 = d_psi2 = 0.0
    b_res5_d = b_res2_d = 0.0
    if f_res:
        dz = zeta5 - zeta2
        q_e = -27.0 / 8.0 * alpha if f_ind else 0.0
        q_i = -3.0 / 8.0 / alpha**2 if f_ind else 0.0
        q_e_d = -27.0 / 8.0 if f_ind else 0.0
        q_i_d = 6.0 / 8.0 / alpha**3 if f_ind else 0.0
        p_common = f1 * dz * dz + f5 * z5 * z2 + f6 * z5 * z5 + f4 * z2 * z2
        p_common_d = (f1_d * dz * dz + f5_d * z5 * z2
                      + f6_d * z5 * z5 + f4_d * z2 * z2)
        p5 = p_common + q_e * z2 * z2
        p2 = p_common + q_i * z2 * z2
        ep5 = E * p5
        ep2 = E * p2
        b_res5 = ep5.real
        b_res2 = ep2.real
        d_psi5 = ep5.imag
        d_psi2 = ep2.imag
        b_res5_d = (E * (p_common_d + q_e_d * z2 * z2)).real
        b_res2_d = (E * (p_common_d + q_i_d * z2 * z2)).real
        dz5_res = 0.5 * E * (f5 * z2 + 2.0 * f6 * z5)
        dz2_res = 0.5 * E * (f5 * z5 + 2.0 * (f4 + q_i) * z2)
        dzeta5_res = 0.5 * E * (2.0 * f1 * dz)
        dzeta2_res = 0.5 * E * (-2.0 * f1 * dz)

    b_sec = b_sec_d = 0.0
    if f_sec:
        zz5 = (z5 * z5.conjugate()).real
        zz2 = (z2 * z2.conjugate()).real
        ss5 = (zeta5 * zeta5.conjugate()).real
        ss2 = (zeta2 * zeta2.conjugate()).real
        cross_z = (z2 * z5.conjugate()).real
        cross_zeta = (zeta2 * zeta5.conjugate()).real
        b_sec = (c0 + c1 * (zz5 + zz2) + c2 * (ss5 + ss2)
                 + c3 * cross_z + c4 * cross_zeta)
        b_sec_d = (c0_d + c1_d * (zz5 + zz2) + c2_d * (ss5 + ss2)
                   + c3_d * cross_z + c4_d * cross_zeta)

    dy = np.empty(N_STATE)
    dlam = np.empty(2)
    for idx in range(2):
        inner = idx == 0
        pre = pre5 if inner else pre2
        a = a5 if inner else a2
        z = z5 if inner else z2
        zeta = zeta5 if inner else zeta2
        lam_factor = -1.0 if inner else 3.0

        if f_res:
            b_res = b_res5 if inner else b_res2
            d_psi = pre * (d_psi5 if inner else d_psi2)
            dres_dz = dz5_res if inner else dz2_res
            dres_dzeta = dzeta5_res if inner else dzeta2_res
            b_res_d = b_res5_d if inner else b_res2_d
        else:
            b_res = 0.0
            d_psi = 0.0
            dres_dz = complex(0.0, 0.0)
            dres_dzeta = complex(0.0, 0.0)
            b_res_d = 0.0

        if f_sec:
            other_z = z2 if inner else z5
            other_zeta = zeta2 if inner else zeta5
            dsec_dz = c1 * z.conjugate() + 0.5 * c3 * other_z.conjugate()
            dsec_dzeta = c2 * zeta.conjugate() + 0.5 * c4 * other_zeta.conjugate()
        else:
            dsec_dz = complex(0.0, 0.0)
            dsec_dzeta = complex(0.0, 0.0)

        if f_obl:
            p2r = (params[P_RP] / a) ** 2
            p4r = p2r * p2r
            lead = gm / (2.0 * a)
            j2 = params[P_J2]
            j4 = params[P_J4]
            f_e = lead * (1.5 * j2 * p2r - 1.125 * j2 * j2 * p4r - 3.75 * j4 * p4r)
            f_i = lead * (1.5 * j2 * p2r - 3.375 * j2 * j2 * p4r - 3.75 * j4 * p4r)
            rp2 = params[P_RP] ** 2
            rp4 = rp2 * rp2
            f_e_d = 0.5 * gm * (-4.5 * j2 * rp2 / a**4
                                + 5.0 * (1.125 * j2 * j2 + 3.75 * j4) * rp4 / a**6)
            f_i_d = 0.5 * gm * (-4.5 * j2 * rp2 / a**4
                                + 5.0 * (3.375 * j2 * j2 + 3.75 * j4) * rp4 / a**6)
            zz = (z * z.conjugate()).real
            ss = (zeta * zeta.conjugate()).real
            sin2i = 4.0 * ss * (1.0 - ss)
            dobl_dz = f_e * z.conjugate()
            dobl_dzeta = -4.0 * f_i * zeta.conjugate() * (1.0 - 2.0 * ss)
            dobl_da = f_e_d * zz - f_i_d * sin2i
        else:
            dobl_dz = complex(0.0, 0.0)
            dobl_dzeta = complex(0.0, 0.0)
            dobl_da = 0.0

        dR_dz = pre * (dres_dz + dsec_dz) + dobl_dz
        dR_dzeta = pre * (dres_dzeta + dsec_dzeta) + dobl_dzeta
        bracket_d = b_res_d + b_sec_d
        if inner:
            d_a = pre * bracket_d / a2 + dobl_da
        else:
            d_a = (-pre / a2 * (b_res + b_sec)
                   + pre * bracket_d * (-alpha / a2) + dobl_da)

        zdz = z * dR_dz
        zeta_dzeta = zeta * dR_dzeta
        s_z = 2.0 * zdz.real
        a_z = complex(0.0, 2.0 * zdz.imag)
        s_zeta = 2.0 * zeta_dzeta.real
        dz_bar = dR_dz.conjugate()
        dzeta_bar = dR_dzeta.conjugate()

        n = math.sqrt(gm / a**3)
        phi = math.sqrt(max(1.0 - (z * z.conjugate()).real, 1e-300))
        r_lam = lam_factor * d_psi
        na2 = n * a * a
        da = 2.0 / (n * a) * r_lam
        dzc = (1j * phi / na2) * (2.0 * dz_bar + (1j / (1.0 + phi)) * z * r_lam
                                  + z / (2.0 * phi**2) * s_zeta)
        dzetac = (1j / (2.0 * na2 * phi)) * (dzeta_bar + 1j * zeta * r_lam
                                             - zeta * a_z)
        dlam[idx] = (n - 2.0 / (n * a) * d_a
                     + phi / (na2 * (1.0 + phi)) * s_z
                     + 1.0 / (2.0 * na2 * phi) * s_zeta)

        # optional Kaula terms
        k2q_s = params[P_K2Q5] if inner else params[P_K2Q2]
        k2q_p = params[P_K2QP]
        if k2q_p != 0.0 or k2q_s != 0.0:
            gms = params[P_GM5] if inner else params[P_GM2]
            rs = params[P_R5] if inner else params[P_R2]
            mass_ratio = gms / gm
            e2_ = (z * z.conjugate()).real
            da += (3.0 * k2q_p * n * mass_ratio * params[P_RP] ** 5 / a**4
                   * (1.0 + 51.0 / 4.0 * e2_)
                   - 21.0 * k2q_s * n / mass_ratio * rs**5 / a**4 * e2_)
            rate_ratio = (57.0 / 8.0 * k2q_p * n * mass_ratio
                          * (params[P_RP] / a) ** 5
                          - 10.5 * k2q_s * n / mass_ratio * (rs / a) ** 5)
            dzc += z * rate_ratio

        base = 0 if inner else 5
        dy[base + 0] = da
        dy[base + 1] = dzc.real
        dy[base + 2] = dzc.imag
        dy[base + 3] = dzetac.real
        dy[base + 4] = dzetac.imag

    dy[10] = 3.0 * dlam[1] - dlam[0]
    return dy


@njit(cache=True)
def integrate_averaged(y0, dt, n_steps, params, sample_every):
    """ABM-10 march of the averaged system with table auto-refresh.

    Returns (samples, stats) where samples[k] = [t, y...] taken every
    sample_every steps (plus the initial point), and stats packs
    [a5_min, a5_max, mean_e5_sq, mean_e2_sq, final_index].
    """
    y = y0.copy()
    alpha0 = y[0] / y[5]
    vals = build_table(alpha0)
    n_samp = n_steps // sample_every + 1
    samples = np.empty((n_samp + 1, 1 + N_STATE))
    k_samp = 0
    samples[0, 0] = 0.0
    samples[0, 1:] = y
    k_samp = 1

    hist = np.empty((10, N_STATE))
    a5_min = y[0]
    a5_max = y[0]
    sum_e5 = 0.0
    sum_e2 = 0.0

    f = averaged_rhs(y, params, vals, alpha0)
    hist[0] = f

    n_seed = min(9, n_steps)
    sub = dt / 10.0
    for i in range(n_seed):
        for _ in range(10):
            # RK8 startup substep
            k_stages = np.empty((11, N_STATE))
            k_stages[0] = averaged_rhs(y, params, vals, alpha0)
            for st in range(1, 11):
                yi = y.copy()
                for prev in range(st):
                    aij = _RK8_A[st, prev]
                    if aij != 0.0:
                        yi += sub * aij * k_stages[prev]
                k_stages[st] = averaged_rhs(yi, params, vals, alpha0)
            for st in range(11):
                bst = _RK8_B[st]
                if bst != 0.0:
                    y += sub * bst * k_stages[st]
            alpha = y[0] / y[5]
            if abs(alpha - alpha0) > TABLE_WINDOW * alpha0:
                alpha0 = alpha
                vals = build_table(alpha0)
        f = averaged_rhs(y, params, vals, alpha0)
        for m in range(9, 0, -1):
            hist[m] = hist[m - 1]
        hist[0] = f
        a5_min = min(a5_min, y[0])
        a5_max = max(a5_max, y[0])
        sum_e5 += y[1] ** 2 + y[2] ** 2
        sum_e2 += y[6] ** 2 + y[7] ** 2
        if (i + 1) % sample_every == 0:
            samples[k_samp, 0] = (i + 1) * dt
            samples[k_samp, 1:] = y
            k_samp += 1

    for i in range(n_seed, n_steps):
        y_pred = y.copy()
        for m in range(10):
            y_pred += dt * _AB10[m] * hist[m]
        f_pred = averaged_rhs(y_pred, params, vals, alpha0)
        y_new = y + dt * _AM10[0] * f_pred
        for m in range(9):
            y_new += dt * _AM10[m + 1] * hist[m]
        y = y_new
        alpha = y[0] / y[5]
        if abs(alpha - alpha0) > TABLE_WINDOW * alpha0:
            alpha0 = alpha
            vals = build_table(alpha0)
        f = averaged_rhs(y, params, vals, alpha0)
        for m in range(9, 0, -1):
            hist[m] = hist[m - 1]
        hist[0] = f
        a5_min = min(a5_min, y[0])
        a5_max = max(a5_max, y[0])
        sum_e5 += y[1] ** 2 + y[2] ** 2
        sum_e2 += y[6] ** 2 + y[7] ** 2
        if (i + 1) % sample_every == 0:
            samples[k_samp, 0] = (i + 1) * dt
            samples[k_samp, 1:] = y
            k_samp += 1

    if n_steps % sample_every != 0:     # always sample the final state
        samples[k_samp, 0] = n_steps * dt
        samples[k_samp, 1:] = y
        k_samp += 1

    stats = np.empty(5)
    stats[0] = a5_min
    stats[1] = a5_max
    stats[2] = sum_e5 / max(n_steps, 1)
    stats[3] = sum_e2 / max(n_steps, 1)
    stats[4] = k_samp
    return samples[:k_samp], stats


# ---------------------------------------------------------------------------
# direct (non-averaged) three-body kernels

D_GM, D_J2, D_J4, D_RP, D_GM5, D_GM2 = range(6)


@njit(cache=True, inline="always")
def _zonal_accel(x, y, z, gm, j2, j4, rp, out):
    r2 = x * x + y * y + z * z
    r = math.sqrt(r2)
    u = z / r
    u2 = u * u
    # J2: acc = mu J2 R^2 r^-(5) [ (3 P2 + u P2') * (x, y) ; 3 z P2 - r (1-u^2) P2' ]
    p2 = 0.5 * (3.0 * u2 - 1.0)
    dp2 = 3.0 * u
    c2 = gm * j2 * rp * rp / (r2 * r2 * r)
    out[0] += c2 * x * (3.0 * p2 + u * dp2)
    out[1] += c2 * y * (3.0 * p2 + u * dp2)
    out[2] += c2 * (z * 3.0 * p2 - r * (1.0 - u2) * dp2)
    # J4
    p4 = 0.125 * (35.0 * u2 * u2 - 30.0 * u2 + 3.0)
    dp4 = 0.5 * (35.0 * u2 * u - 15.0 * u)
    c4 = gm * j4 * rp**4 / (r2 * r2 * r2 * r)
    out[0] += c4 * x * (5.0 * p4 + u * dp4)
    out[1] += c4 * y * (5.0 * p4 + u * dp4)
    out[2] += c4 * (z * 5.0 * p4 - r * (1.0 - u2) * dp4)


@njit(cache=True, inline="always")
def _direct_rhs_into(y, params, dy):
    """RHS of the direct system written into dy (no allocation)."""
    gm = params[D_GM]
    gm5 = params[D_GM5]
    gm2 = params[D_GM2]
    dy[0] = y[3]
    dy[1] = y[4]
    dy[2] = y[5]
    dy[6] = y[9]
    dy[7] = y[10]
    dy[8] = y[11]

    dx = y[6] - y[0]
    dyy = y[7] - y[1]
    dz = y[8] - y[2]
    dist2 = dx * dx + dyy * dyy + dz * dz
    if dist2 <= 0.0:
        raise ValueError("satellite collision in direct model")
    inv_d3 = dist2 ** (-1.5)
    r5n2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2]
    r2n2 = y[6] * y[6] + y[7] * y[7] + y[8] * y[8]
    inv_r5 = r5n2 ** (-1.5)
    inv_r2 = r2n2 ** (-1.5)

    dy[3] = -(gm + gm5) * y[0] * inv_r5 + gm2 * (dx * inv_d3 - y[6] * inv_r2)
    dy[4] = -(gm + gm5) * y[1] * inv_r5 + gm2 * (dyy * inv_d3 - y[7] * inv_r2)
    dy[5] = -(gm + gm5) * y[2] * inv_r5 + gm2 * (dz * inv_d3 - y[8] * inv_r2)
    dy[9] = -(gm + gm2) * y[6] * inv_r2 + gm5 * (-dx * inv_d3 - y[0] * inv_r5)
    dy[10] = -(gm + gm2) * y[7] * inv_r2 + gm5 * (-dyy * inv_d3 - y[1] * inv_r5)
    dy[11] = -(gm + gm2) * y[8] * inv_r2 + gm5 * (-dz * inv_d3 - y[2] * inv_r5)
    _zonal_accel(y[0], y[1], y[2], gm, params[D_J2], params[D_J4],
                 params[D_RP], dy[3:6])
    _zonal_accel(y[6], y[7], y[8], gm, params[D_J2], params[D_J4],
                 params[D_RP], dy[9:12])


@njit(cache=True)
def direct_rhs(y, params):
    """Planetocentric two-satellite point-mass system with J2/J4.

    y = [r5 (3), v5 (3), r2 (3), v2 (3)] in km, km/s.
    """
    dy = np.empty(12)
    _direct_rhs_into(y, params, dy)
    return dy


@njit(cache=True, inline="always")
def _osculating_a5(y, mu5):
    r = math.sqrt(y[0] ** 2 + y[1] ** 2 + y[2] ** 2)
    v2 = y[3] ** 2 + y[4] ** 2 + y[5] ** 2
    return 1.0 / (2.0 / r - v2 / mu5)


@njit(cache=True)
def integrate_direct(y0, dt, n_steps, params, sample_every):
    """ABM-10 march of the direct system; tracks the a5 excursion.

    Returns (samples, stats): samples rows are [t, y (12)], stats is
    [a5_min, a5_max, n_samples].  The history index rotates instead of
    shifting, so the main loop allocates nothing.
    """
    mu5 = params[D_GM] + params[D_GM5]
    y = y0.copy()
    n_samp = n_steps // sample_every + 2
    samples = np.empty((n_samp, 13))
    samples[0, 0] = 0.0
    samples[0, 1:] = y
    k_samp = 1

    # hist[(head + m) % 10] is f_{n-m}
    hist = np.empty((10, 12))
    head = 0
    a5 = _osculating_a5(y, mu5)
    a5_min = a5
    a5_max = a5

    _direct_rhs_into(y, params, hist[0])

    scratch = np.empty(12)
    k_stages = np.empty((11, 12))
    yi = np.empty(12)

    n_seed = min(9, n_steps)
    sub = dt / 10.0
    for i in range(n_seed):
        for _ in range(10):
            _direct_rhs_into(y, params, k_stages[0])
            for st in range(1, 11):
                for c in range(12):
                    acc = y[c]
                    for prev in range(st):
                        aij = _RK8_A[st, prev]
                        if aij != 0.0:
                            acc += sub * aij * k_stages[prev, c]
                    yi[c] = acc
                _direct_rhs_into(yi, params, k_stages[st])
            for st in range(11):
                bst = _RK8_B[st]
                if bst != 0.0:
                    for c in range(12):
                        y[c] += sub * bst * k_stages[st, c]
        head = (head + 9) % 10
        _direct_rhs_into(y, params, hist[head])
        a5 = _osculating_a5(y, mu5)
        a5_min = min(a5_min, a5)
        a5_max = max(a5_max, a5)
        if (i + 1) % sample_every == 0:
            samples[k_samp, 0] = (i + 1) * dt
            samples[k_samp, 1:] = y
            k_samp += 1

    for i in range(n_seed, n_steps):
        for c in range(12):
            acc = 0.0
            for m in range(10):
                acc += _AB10[m] * hist[(head + m) % 10, c]
            scratch[c] = y[c] + dt * acc
        new_head = (head + 9) % 10
        f_pred = hist[new_head]          # about to be overwritten anyway
        _direct_rhs_into(scratch, params, f_pred)
        for c in range(12):
            acc = _AM10[0] * f_pred[c]
            for m in range(9):
                acc += _AM10[m + 1] * hist[(head + m) % 10, c]
            y[c] = y[c] + dt * acc
        head = new_head
        _direct_rhs_into(y, params, hist[head])
        a5 = _osculating_a5(y, mu5)
        a5_min = min(a5_min, a5)
        a5_max = max(a5_max, a5)
        if (i + 1) % sample_every == 0:
            samples[k_samp, 0] = (i + 1) * dt
            samples[k_samp, 1:] = y
            k_samp += 1

    stats = np.empty(3)
    stats[0] = a5_min
    stats[1] = a5_max
    stats[2] = k_samp
    return samples[:k_samp], stats

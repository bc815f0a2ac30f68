"""Averaged disturbing function of the 3:1 pair and its analytic partials.

The long-period disturbing function of each satellite is

    R_i = (G m_j / a2) * [ B_res_i + B_sec ] + R_obl_i,

where B_res collects the six resonant cosines plus the indirect term,
B_sec the secular terms, and R_obl the averaged oblateness potential.
Everything is polynomial in the complex variables z = k + i h and
zeta = q + i p; the fast longitudes appear only through the exact
resonant angle psi, via E = exp(-i psi):

    B_res = Re[ E * P ],
    P = (kappa/2) (z5 - z2 pattern in zeta) ... (see code)

The indirect contributions enter the brackets as -(27/8) alpha e2^2 for
the inner body and -(3/8) alpha^-2 e2^2 for the outer one; both reduce
to the same strength at exact resonance (alpha^3 = 1/9), which is what
keeps 3 m5 sqrt(GM a5) + m2 sqrt(GM a2) a conserved quantity of the
averaged flow.  The coefficients were validated against brute-force
Fourier extraction from the exact two-orbit kernel (see tests).
"""

import cmath
import math
from dataclasses import dataclass

from .bodies import PlanetModel
from .laplace import LaplaceTable

# indices into LaplaceTable rows (see laplace.TABLE_PAIRS)
_B12_0, _B12_1, _B12_2, _B12_3, _B32_1, _B32_2 = range(6)

Q_INDIRECT_OUTER_PERTURBER = -27.0 / 8.0   # applies alpha weight
Q_INDIRECT_INNER_PERTURBER = -3.0 / 8.0    # applies alpha^-2 weight


@dataclass(frozen=True)
class PerturbationCoeffs:
    """Kernels of the resonant and secular terms at one alpha.

    f-kernels carry their numeric prefactors but not the (e, gamma)
    factors; *_d are d/d_alpha of the same quantities.
    """

    f1: float; f2: float; f3: float; f4: float; f5: float; f6: float
    c0: float; c1: float; c2: float; c3: float; c4: float
    f1_d: float; f2_d: float; f3_d: float; f4_d: float; f5_d: float; f6_d: float
    c0_d: float; c1_d: float; c2_d: float; c3_d: float; c4_d: float


def evaluate_coeffs(table: LaplaceTable, alpha) -> PerturbationCoeffs:
    """All kernels and their alpha-derivatives from a Laplace table."""
    t = table.evaluate
    b32_2, b32_2p = t(_B32_2, alpha, 0), t(_B32_2, alpha, 1)
    b32_1, b32_1p = t(_B32_1, alpha, 0), t(_B32_1, alpha, 1)
    b0 = [t(_B12_0, alpha, m) for m in range(4)]
    b1 = [t(_B12_1, alpha, m) for m in range(4)]
    b2 = [t(_B12_2, alpha, m) for m in range(4)]
    b3 = [t(_B12_3, alpha, m) for m in range(4)]

    kinc = alpha * b32_2
    kinc_d = b32_2 + alpha * b32_2p

    def op(c, b):
        return c * b[0] + 10.0 * alpha * b[1] + alpha**2 * b[2]

    def op_d(c, b):
        return (c + 10.0) * b[1] + 12.0 * alpha * b[2] + alpha**2 * b[3]

    k4, k4_d = op(17.0, b1), op_d(17.0, b1)
    k5, k5_d = op(20.0, b2), op_d(20.0, b2)
    k6, k6_d = op(21.0, b3), op_d(21.0, b3)

    return PerturbationCoeffs(
        f1=0.5 * kinc, f2=-kinc, f3=0.5 * kinc,
        f4=k4 / 8.0, f5=-k5 / 4.0, f6=k6 / 8.0,
        c0=0.5 * b0[0],
        c1=(2.0 * alpha * b0[1] + alpha**2 * b0[2]) / 8.0,
        c2=-0.5 * alpha * b32_1,
        c3=(2.0 * b1[0] - 2.0 * alpha * b1[1] - alpha**2 * b1[2]) / 4.0,
        c4=alpha * b32_1,
        f1_d=0.5 * kinc_d, f2_d=-kinc_d, f3_d=0.5 * kinc_d,
        f4_d=k4_d / 8.0, f5_d=-k5_d / 4.0, f6_d=k6_d / 8.0,
        c0_d=0.5 * b0[1],
        c1_d=(2.0 * b0[1] + 4.0 * alpha * b0[2] + alpha**2 * b0[3]) / 8.0,
        c2_d=-0.5 * (b32_1 + alpha * b32_1p),
        c3_d=(-4.0 * alpha * b1[2] - alpha**2 * b1[3]) / 4.0,
        c4_d=b32_1 + alpha * b32_1p,
    )


def resonant_coeffs(table, alpha):
    """The six resonant kernels f1..f6 (eccentricity/inclination factors
    are applied by the caller)."""
    c = evaluate_coeffs(table, alpha)
    return (c.f1, c.f2, c.f3, c.f4, c.f5, c.f6)


def secular_coeffs(table, alpha):
    """The secular kernels C0..C4."""
    c = evaluate_coeffs(table, alpha)
    return (c.c0, c.c1, c.c2, c.c3, c.c4)


def indirect_terms(e2, lam5, lam2, peri2, perturber_outside):
    """Indirect resonant contribution of the planetocentric frame.

    -(27/8) e2^2 cos(lam5 - 3 lam2 + 2 peri2) when the perturber is the
    outer body, -(3/8) e2^2 cos(same) when it is the inner one.  The
    alpha weights that carry these into the bracket are applied by the
    assembly."""
    q = Q_INDIRECT_OUTER_PERTURBER if perturber_outside else Q_INDIRECT_INNER_PERTURBER
    return q * e2**2 * math.cos(lam5 - 3.0 * lam2 + 2.0 * peri2)


def oblateness_strengths(a, planet: PlanetModel):
    """(F_e, F_i): coefficients of e^2 and sin^2(I) in the averaged
    oblateness potential, km^2/s^2."""
    p2 = (planet.radius_ref / a) ** 2
    p4 = p2 * p2
    lead = planet.gm / (2.0 * a)
    f_e = lead * (1.5 * planet.j2 * p2 - (9.0 / 8.0) * planet.j2**2 * p4
                  - (15.0 / 4.0) * planet.j4 * p4)
    f_i = lead * (1.5 * planet.j2 * p2 - (27.0 / 8.0) * planet.j2**2 * p4
                  - (15.0 / 4.0) * planet.j4 * p4)
    return f_e, f_i


def oblateness_strengths_da(a, planet: PlanetModel):
    """d(F_e)/da and d(F_i)/da."""
    r2 = planet.radius_ref**2
    r4 = r2 * r2
    half_gm = 0.5 * planet.gm
    quad = 1.5 * planet.j2 * r2
    quart_e = (9.0 / 8.0) * planet.j2**2 * r4 + (15.0 / 4.0) * planet.j4 * r4
    quart_i = (27.0 / 8.0) * planet.j2**2 * r4 + (15.0 / 4.0) * planet.j4 * r4
    f_e_d = half_gm * (-3.0 * quad / a**4 + 5.0 * quart_e / a**6)
    f_i_d = half_gm * (-3.0 * quad / a**4 + 5.0 * quart_i / a**6)
    return f_e_d, f_i_d


def oblateness_term(a, e, inc, planet: PlanetModel):
    """Averaged oblateness disturbing function R^A(a, e, I), km^2/s^2."""
    if a <= 0:
        raise ValueError("semi-major axis must be positive")
    f_e, f_i = oblateness_strengths(a, planet)
    return f_e * e**2 - f_i * math.sin(inc) ** 2


@dataclass(frozen=True)
class TermFlags:
    """Switches for the pieces of the long-period disturbing function."""

    resonant: bool = True
    secular: bool = True
    oblateness: bool = True
    indirect: bool = True


@dataclass(frozen=True)
class Partials:
    """R and the partial derivatives the Lagrange equations need.

    dz is dR/d(conj z); s_z = 2 Re(z dR/dz) and a_z = 2i Im(z dR/dz)
    are the real/imaginary pairings that enter the printed equations;
    same for zeta.  d_psi is dR/d_psi and d_a is dR/da of this
    satellite's own semi-major axis.
    """

    value: float
    dz: complex
    dzeta: complex
    s_z: float
    a_z: complex
    s_zeta: float
    d_psi: float
    d_a: float


def perturbation_and_partials(
    a5, z5, zeta5, a2, z2, zeta2, psi,
    table: LaplaceTable,
    planet: PlanetModel,
    gm5, gm2,
    flags: TermFlags = TermFlags(),
):
    """Long-period disturbing functions of both satellites with partials.

    Returns (Partials_inner, Partials_outer).  gm5/gm2 are the absolute
    gravitational parameters of the satellites (km^3/s^2); the table
    must be fresh for alpha = a5/a2.
    """
    alpha = a5 / a2
    if not table.fresh_for(alpha):
        raise ValueError("stale Laplace table for alpha; refresh before evaluating")
    c = evaluate_coeffs(table, alpha)
    E = cmath.exp(-1j * psi)

    pre5 = gm2 / a2
    pre2 = gm5 / a2

    res = {}
    if flags.resonant:
        dzeta_sq = zeta5 - zeta2
        q_e = Q_INDIRECT_OUTER_PERTURBER * alpha if flags.indirect else 0.0
        q_i = Q_INDIRECT_INNER_PERTURBER / alpha**2 if flags.indirect else 0.0
        q_e_d = Q_INDIRECT_OUTER_PERTURBER if flags.indirect else 0.0
        q_i_d = -2.0 * Q_INDIRECT_INNER_PERTURBER / alpha**3 if flags.indirect else 0.0
        # f1,f2,f3 share one kernel and combine to (kinc/2)(zeta5-zeta2)^2
        p_common = (
            c.f1 * dzeta_sq * dzeta_sq
            + c.f5 * z5 * z2
            + c.f6 * z5 * z5
            + c.f4 * z2 * z2
        )
        # d/d_alpha of the common polynomial
        p_common_d = (
            c.f1_d * dzeta_sq * dzeta_sq
            + c.f5_d * z5 * z2
            + c.f6_d * z5 * z5
            + c.f4_d * z2 * z2
        )
        res["p5"] = p_common + q_e * z2 * z2
        res["p2"] = p_common + q_i * z2 * z2
        res["p5_d"] = p_common_d + q_e_d * z2 * z2
        res["p2_d"] = p_common_d + q_i_d * z2 * z2
        res["dp_dz5"] = c.f5 * z2 + 2.0 * c.f6 * z5
        res["dp5_dz2"] = c.f5 * z5 + 2.0 * (c.f4 + q_e) * z2
        res["dp2_dz2"] = c.f5 * z5 + 2.0 * (c.f4 + q_i) * z2
        res["dp_dzeta5"] = 2.0 * c.f1 * dzeta_sq
        res["dp_dzeta2"] = -2.0 * c.f1 * dzeta_sq

    def b_sec():
        return (
            c.c0
            + c.c1 * (abs(z5) ** 2 + abs(z2) ** 2)
            + c.c2 * (abs(zeta5) ** 2 + abs(zeta2) ** 2)
            + c.c3 * (z2 * z5.conjugate()).real
            + c.c4 * (zeta2 * zeta5.conjugate()).real
        )

    def b_sec_d():
        return (
            c.c0_d
            + c.c1_d * (abs(z5) ** 2 + abs(z2) ** 2)
            + c.c2_d * (abs(zeta5) ** 2 + abs(zeta2) ** 2)
            + c.c3_d * (z2 * z5.conjugate()).real
            + c.c4_d * (zeta2 * zeta5.conjugate()).real
        )

    sec_val = b_sec() if flags.secular else 0.0
    sec_val_d = b_sec_d() if flags.secular else 0.0

    out = []
    for body_index in (5, 2):
        inner = body_index == 5
        pre = pre5 if inner else pre2
        a_own = a5 if inner else a2
        z_own = z5 if inner else z2
        zeta_own = zeta5 if inner else zeta2

        if flags.resonant:
            p_own = res["p5"] if inner else res["p2"]
            b_res = (E * p_own).real
            d_psi = pre * (E * p_own).imag
            dp_dz = res["dp_dz5"] if inner else res["dp2_dz2"]
            dres_dz = 0.5 * E * dp_dz          # d(B_res)/dz_own
            dp_dzeta = res["dp_dzeta5"] if inner else res["dp_dzeta2"]
            dres_dzeta = 0.5 * E * dp_dzeta
            p_own_d = res["p5_d"] if inner else res["p2_d"]
            b_res_d = (E * p_own_d).real
        else:
            b_res = d_psi = b_res_d = 0.0
            dres_dz = dres_dzeta = 0.0j

        # secular partials wrt the body's own variables
        if flags.secular:
            other_z = z2 if inner else z5
            other_zeta = zeta2 if inner else zeta5
            dsec_dz = c.c1 * z_own.conjugate() + 0.5 * c.c3 * other_z.conjugate()
            dsec_dzeta = c.c2 * zeta_own.conjugate() + 0.5 * c.c4 * other_zeta.conjugate()
        else:
            dsec_dz = dsec_dzeta = 0.0j

        # oblateness
        if flags.oblateness:
            f_e, f_i = oblateness_strengths(a_own, planet)
            f_e_d, f_i_d = oblateness_strengths_da(a_own, planet)
            zz = abs(z_own) ** 2
            ss = abs(zeta_own) ** 2
            sin2i = 4.0 * ss * (1.0 - ss)
            r_obl = f_e * zz - f_i * sin2i
            dobl_dz = f_e * z_own.conjugate()
            dobl_dzeta = -4.0 * f_i * zeta_own.conjugate() * (1.0 - 2.0 * ss)
            dobl_da = f_e_d * zz - f_i_d * sin2i
        else:
            r_obl = dobl_da = 0.0
            dobl_dz = dobl_dzeta = 0.0j

        value = pre * (b_res + sec_val) + r_obl

        # dR/dz (Wirtinger, z and conj z independent); dR/d(conj z) = conj
        dR_dz = pre * (dres_dz + dsec_dz) + dobl_dz
        dR_dzeta = pre * (dres_dzeta + dsec_dzeta) + dobl_dzeta

        # dR/da of the body's own semi-major axis.  alpha = a5/a2:
        # d_alpha/da5 = 1/a2, d_alpha/da2 = -alpha/a2; the outer body
        # also sees the 1/a2 prefactor.
        bracket_d = b_res_d + sec_val_d
        if inner:
            d_a = pre * bracket_d / a2 + dobl_da
        else:
            d_a = (
                -pre / a2 * (b_res + sec_val)
                + pre * bracket_d * (-alpha / a2)
                + dobl_da
            )

        zdz = z_own * dR_dz
        zeta_dzeta = zeta_own * dR_dzeta
        out.append(
            Partials(
                value=value,
                dz=dR_dz.conjugate(),
                dzeta=dR_dzeta.conjugate(),
                s_z=2.0 * zdz.real,
                a_z=2j * zdz.imag,
                s_zeta=2.0 * zeta_dzeta.real,
                d_psi=d_psi,
                d_a=d_a,
            )
        )
    return out[0], out[1]

"""Averaged equations of motion of the resonant pair (11 ODEs).

State vector layout (units: km, rad, seconds):

    y = [a5, k5, h5, q5, p5, a2, k2, h2, q2, p2, psi]

The Lagrange equations in nonsingular variables read, per satellite,
with R its long-period disturbing function and phi = sqrt(1 - z zbar):

    da/dt   = 2/(n a) dR/dlam
    dz/dt   = (i phi)/(n a^2) [ 2 dR/dzbar + i/(1+phi) z dR/dlam
                                + z/(2 phi^2) (zeta dR/dzeta + c.c.) ]
    dzeta/dt= i/(2 n a^2 phi) [ dR/dzetabar + i zeta dR/dlam
                                - zeta (z dR/dz - c.c.) ]
    dlam/dt = n - 2/(n a) dR/da + phi/(n a^2 (1+phi)) (z dR/dz + c.c.)
              + 1/(2 n a^2 phi) (zeta dR/dzeta + c.c.)

dR/dlam acts only through the exact resonant angle (factor -1 for the
inner satellite, +3 for the outer), and dpsi/dt = 3 dlam2 - dlam5.
Slow tidal (Kaula) terms can be added on top of a and z.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import PlanetModel, BodyPhysical
from .disturbing import Partials, TermFlags, perturbation_and_partials
from .elements import SatelliteDynState, SystemState
from .laplace import LaplaceTable
from .tides import eccentricity_rate_ratio, semi_major_rate

IDX_A5, IDX_K5, IDX_H5, IDX_Q5, IDX_P5 = range(5)
IDX_A2, IDX_K2, IDX_H2, IDX_Q2, IDX_P2 = range(5, 10)
IDX_PSI = 10


@dataclass(frozen=True)
class DerivativeVector:
    """Named view of the 11 time derivatives (per second)."""

    inner: tuple    # (da, dk, dh, dq, dp)
    outer: tuple
    dpsi: float

    def as_array(self):
        return np.array([*self.inner, *self.outer, self.dpsi])


@dataclass(frozen=True)
class KaulaSettings:
    """Tidal-rate coupling for both satellites."""

    k2q_planet: float = 0.0
    k2q_inner: float = 0.0
    k2q_outer: float = 0.0


@dataclass
class AveragedModel:
    """Averaged 3-body model with optional tidal migration terms.

    Holds the Laplace table cache; derivative evaluation refreshes it
    whenever alpha leaves the Taylor window.
    """

    planet: PlanetModel
    body_inner: BodyPhysical
    body_outer: BodyPhysical
    flags: TermFlags = TermFlags()
    kaula: KaulaSettings = KaulaSettings()
    table: LaplaceTable = None

    def ensure_table(self, alpha):
        if self.table is None:
            self.table = LaplaceTable.build(alpha)
        elif not self.table.fresh_for(alpha):
            self.table.refresh(alpha)
        return self.table

    def state_to_vector(self, sys: SystemState):
        i, o = sys.sat_inner, sys.sat_outer
        return np.array([
            i.a, i.k, i.h, i.q, i.p,
            o.a, o.k, o.h, o.q, o.p,
            sys.psi,
        ])

    def vector_to_state(self, y, epoch=0.0, lam_inner=0.0, lam_outer=0.0):
        inner = SatelliteDynState(a=y[0], k=y[1], h=y[2], q=y[3], p=y[4],
                                  mean_longitude=lam_inner)
        outer = SatelliteDynState(a=y[5], k=y[6], h=y[7], q=y[8], p=y[9],
                                  mean_longitude=lam_outer)
        return SystemState(sat_inner=inner, sat_outer=outer,
                           psi=y[10] % (2.0 * math.pi), epoch=epoch)

    def derivatives(self, y):
        """Time derivatives of the 11-vector, per second."""
        a5, a2 = y[IDX_A5], y[IDX_A2]
        z5 = complex(y[IDX_K5], y[IDX_H5])
        zeta5 = complex(y[IDX_Q5], y[IDX_P5])
        z2 = complex(y[IDX_K2], y[IDX_H2])
        zeta2 = complex(y[IDX_Q2], y[IDX_P2])
        psi = y[IDX_PSI]
        table = self.ensure_table(a5 / a2)
        part5, part2 = perturbation_and_partials(
            a5, z5, zeta5, a2, z2, zeta2, psi,
            table, self.planet, self.body_inner.gm, self.body_outer.gm,
            self.flags,
        )
        da5, dz5, dzeta5, dlam5 = _lagrange_rates(
            self.planet.gm, a5, z5, zeta5, part5, lam_factor=-1.0
        )
        da2, dz2, dzeta2, dlam2 = _lagrange_rates(
            self.planet.gm, a2, z2, zeta2, part2, lam_factor=3.0
        )

        k = self.kaula
        if k.k2q_planet != 0.0 or k.k2q_inner != 0.0 or k.k2q_outer != 0.0:
            e5 = abs(z5)
            da5 += semi_major_rate(a5, e5, self.planet, self.body_inner,
                                   k.k2q_planet, k.k2q_inner)
            dz5 += z5 * eccentricity_rate_ratio(a5, self.planet, self.body_inner,
                                                k.k2q_planet, k.k2q_inner)
            e2 = abs(z2)
            da2 += semi_major_rate(a2, e2, self.planet, self.body_outer,
                                   k.k2q_planet, k.k2q_outer)
            dz2 += z2 * eccentricity_rate_ratio(a2, self.planet, self.body_outer,
                                                k.k2q_planet, k.k2q_outer)

        return np.array([
            da5, dz5.real, dz5.imag, dzeta5.real, dzeta5.imag,
            da2, dz2.real, dz2.imag, dzeta2.real, dzeta2.imag,
            3.0 * dlam2 - dlam5,
        ])

    def rhs(self, t, y):
        return self.derivatives(y)


def _lagrange_rates(gm, a, z, zeta, part: Partials, lam_factor):
    """(da/dt, dz/dt, dzeta/dt, dlam/dt) for one satellite."""
    n = math.sqrt(gm / a**3)
    phi = math.sqrt(max(1.0 - (z * z.conjugate()).real, 1e-300))
    r_lam = lam_factor * part.d_psi
    na2 = n * a * a

    da = 2.0 / (n * a) * r_lam
    dz = (1j * phi / na2) * (
        2.0 * part.dz
        + (1j / (1.0 + phi)) * z * r_lam
        + z / (2.0 * phi**2) * part.s_zeta
    )
    dzeta = (1j / (2.0 * na2 * phi)) * (
        part.dzeta + 1j * zeta * r_lam - zeta * part.a_z
    )
    dlam = (
        n
        - 2.0 / (n * a) * part.d_a
        + phi / (na2 * (1.0 + phi)) * part.s_z
        + 1.0 / (2.0 * na2 * phi) * part.s_zeta
    )
    return da, dz, dzeta, dlam


def equations_of_motion(sys: SystemState, model: AveragedModel) -> DerivativeVector:
    """Named derivatives of a SystemState under the averaged model."""
    dy = model.derivatives(model.state_to_vector(sys))
    return DerivativeVector(inner=tuple(dy[0:5]), outer=tuple(dy[5:10]), dpsi=dy[10])


def momentum_integral(y, planet: PlanetModel, body_inner, body_outer):
    """3 m5 sqrt(GM a5) + m2 sqrt(GM a2): conserved without tides.

    Masses enter as gm ratios; the overall scale is irrelevant for
    drift diagnostics.
    """
    gm = planet.gm
    return (
        3.0 * body_inner.gm * math.sqrt(gm * y[IDX_A5])
        + body_outer.gm * math.sqrt(gm * y[IDX_A2])
    )

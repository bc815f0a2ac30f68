"""Tidal dissipation, equilibrium obliquity, and secular migration rates.

Everything here is algebraic in the orbit and body parameters; the
temperature dependence enters only through the tidal ratio k2/Q that
the rheology module supplies.
"""

import math
from dataclasses import dataclass

from .constants import G_SI, KM, YEAR, MYR
from .bodies import PlanetModel, BodyPhysical
from .elements import OrbitalElements, mean_motion
from .thermal import MIXTURE_CP


@dataclass(frozen=True)
class InertiaMoments:
    """Smallest and largest principal moments of inertia, kg m^2."""

    i_a: float
    i_c: float

    def __post_init__(self):
        if not (self.i_c >= self.i_a > 0):
            raise ValueError("moments must satisfy i_c >= i_a > 0")


@dataclass(frozen=True)
class TidalRates:
    """Secular tidal rates: da/dt in km/yr, de/dt in 1/yr."""

    da_dt: float
    de_dt: float

    def __post_init__(self):
        if not (math.isfinite(self.da_dt) and math.isfinite(self.de_dt)):
            raise ValueError("tidal rates must be finite")


def moments_of_inertia(rho, r_a, r_b, r_c):
    """Principal moments of a homogeneous triaxial ellipsoid.

    A = (4/15) rho pi abc (b^2 + c^2),  C = (4/15) rho pi abc (a^2 + b^2),
    with radii in meters and rho in kg/m^3.
    """
    if min(r_a, r_b, r_c) <= 0:
        raise ValueError("radii must be positive")
    common = 4.0 / 15.0 * rho * math.pi * r_a * r_b * r_c
    return InertiaMoments(
        i_a=common * (r_b**2 + r_c**2),
        i_c=common * (r_a**2 + r_b**2),
    )


def node_rate(a, inc, planet: PlanetModel):
    """Secular J2 regression of the ascending node, rad/s (a in km)."""
    n = mean_motion(a, planet)
    return -1.5 * n * planet.j2 * (planet.radius_ref / a) ** 2 * math.cos(inc)


def equilibrium_obliquity(inc, n, node_rate_value, moments: InertiaMoments):
    """Obliquity of the low-obliquity Cassini equilibrium.

    eps = sin I / (alpha/node_rate + cos I) with the precession strength
    alpha = (3/2) (C - A) n / C.  Raises if the spin sits at the Cassini
    resonance where the denominator vanishes.
    """
    alpha = 1.5 * (moments.i_c - moments.i_a) * n / moments.i_c
    if node_rate_value == 0.0:
        # no node regression: the equilibrium tilt follows the orbit pole
        return 0.0 if alpha != 0.0 else math.atan2(math.sin(inc), math.cos(inc))
    den = alpha / node_rate_value + math.cos(inc)
    if abs(den) < 1e-15:
        raise ValueError("singular Cassini state: alpha ~ -node_rate*cos(inc)")
    return math.sin(inc) / den


def dissipation_rate(k2_over_q, planet_gm, n, r_s, a, e, eps=0.0):
    """Tidal power dissipated in a synchronous satellite, W.

    dE/dt = (k2/Q)_s G M^2 n R_s^5 / a^6 * ((21/2) e^2 + (3/2) sin^2 eps),
    with planet_gm in km^3/s^2, r_s and a in km, n in rad/s.
    """
    if a <= 0:
        raise ValueError("semi-major axis must be positive")
    gm_si = planet_gm * KM**3
    gmm = gm_si * gm_si / G_SI          # G * M^2
    geom = gmm * n * (r_s * KM) ** 5 / (a * KM) ** 6
    return k2_over_q * geom * (10.5 * e**2 + 1.5 * math.sin(eps) ** 2)


def kaula_rates(orbit: OrbitalElements, planet: PlanetModel, sat: BodyPhysical,
                k2q_p, k2q_s):
    """Secular migration and eccentricity rates from tides in both bodies.

    da/dt = 3 (k2/Q)_p n (m/M) R_p^5/a^4 (1 + 51/4 e^2)
            - 21 (k2/Q)_s n (M/m) R_s^5/a^4 e^2
    de/dt = 57/8 (k2/Q)_p n (m/M) (R_p/a)^5 e
            - 21/2 (k2/Q)_s n (M/m) (R_s/a)^5 e

    Planet dissipation pushes the orbit out and pumps e; satellite
    dissipation damps both.
    """
    a, e = orbit.a, orbit.e
    da = semi_major_rate(a, e, planet, sat, k2q_p, k2q_s)
    de = eccentricity_rate_ratio(a, planet, sat, k2q_p, k2q_s) * e
    return TidalRates(da_dt=da * YEAR, de_dt=de * YEAR)


def semi_major_rate(a, e, planet, sat, k2q_p, k2q_s):
    """da/dt in km/s (internal rate used by the equations of motion)."""
    n = mean_motion(a, planet)
    mass_ratio = sat.gm / planet.gm
    planet_term = 3.0 * k2q_p * n * mass_ratio * planet.radius_ref**5 / a**4 \
        * (1.0 + 51.0 / 4.0 * e**2)
    sat_term = 21.0 * k2q_s * n / mass_ratio * sat.mean_radius**5 / a**4 * e**2
    return planet_term - sat_term


def eccentricity_rate_ratio(a, planet, sat, k2q_p, k2q_s):
    """(de/dt)/e in 1/s; finite at e = 0 since both Kaula terms scale with e."""
    n = mean_motion(a, planet)
    mass_ratio = sat.gm / planet.gm
    planet_term = 57.0 / 8.0 * k2q_p * n * mass_ratio * (planet.radius_ref / a) ** 5
    sat_term = 10.5 * k2q_s * n / mass_ratio * (sat.mean_radius / a) ** 5
    return planet_term - sat_term


def heating_estimate(e, q_factor, k2, planet: PlanetModel, sat: BodyPhysical,
                     orbit: OrbitalElements, cp=MIXTURE_CP):
    """Quick tidal-heating estimate on the (e, Q) plane.

    Power = (21/2) k2 G M^2 n R_s^5 / a^6 * e^2 / Q; the temperature
    rise over 1 Myr follows from the specific power divided by cp.
    Returns (power_W, dT_over_1Myr_K).  Consistent with
    dissipation_rate at zero obliquity when fed the same k2/Q.
    """
    if q_factor <= 0:
        raise ValueError("q_factor must be positive")
    n = mean_motion(orbit.a, planet)
    power = dissipation_rate(k2 / q_factor, planet.gm, n, sat.mean_radius,
                             orbit.a, e, eps=0.0)
    dt_myr = power / sat.mass / cp * MYR
    return power, dt_myr


def estimator_grid(e_values, q_values, k2, planet, sat, orbit, cp=MIXTURE_CP):
    """Rows (e, Q, power_W, dT_1Myr_K, log10_dT) over the grid, e-major order."""
    rows = []
    for e in e_values:
        for q in q_values:
            power, dt = heating_estimate(e, q, k2, planet, sat, orbit, cp=cp)
            log_dt = math.log10(dt) if dt > 0 else -math.inf
            rows.append((e, q, power, dt, log_dt))
    return rows

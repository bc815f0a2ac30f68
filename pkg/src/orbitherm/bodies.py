"""Body records: the central planet and the two satellites.

The reference system is Uranus with the Miranda-Umbriel pair (satellite
indices 5 and 2 by discovery order), but the records are plain data and
any synchronously rotating pair can be described with them.
"""

import math
from dataclasses import dataclass, field

from .constants import G_KM, KM


@dataclass(frozen=True)
class PlanetModel:
    """Gravitational and tidal description of the central planet.

    radius_ref is the equatorial radius to which j2/j4 are referenced
    and is the R_p that enters every oblateness and tidal formula.
    """

    gm: float            # km^3/s^2
    j2: float
    j4: float
    radius_ref: float    # km
    k2_over_q: float = 0.0

    def __post_init__(self):
        if self.gm <= 0:
            raise ValueError(f"planet gm must be positive, got {self.gm}")
        if self.radius_ref <= 0:
            raise ValueError(f"radius_ref must be positive, got {self.radius_ref}")
        if self.k2_over_q < 0:
            raise ValueError(f"k2_over_q must be >= 0, got {self.k2_over_q}")

    @property
    def mass(self):
        """kg"""
        return self.gm / G_KM


@dataclass(frozen=True)
class BodyPhysical:
    """Physical description of a satellite.

    Triaxial radii are ordered r_a >= r_b >= r_c (subplanetary, along
    orbit, polar).  mass is derived from gm so the two can never drift
    apart.
    """

    gm: float             # km^3/s^2
    mean_radius: float    # km
    r_a: float            # km
    r_b: float            # km
    r_c: float            # km
    density: float        # kg/m^3

    def __post_init__(self):
        if not (self.r_a >= self.r_b >= self.r_c > 0):
            raise ValueError(
                f"triaxial radii must satisfy r_a >= r_b >= r_c > 0, "
                f"got ({self.r_a}, {self.r_b}, {self.r_c})"
            )
        if self.gm <= 0 or self.mean_radius <= 0 or self.density <= 0:
            raise ValueError("gm, mean_radius and density must be positive")

    @property
    def mass(self):
        """kg"""
        return self.gm / G_KM

    @property
    def radius_m(self):
        """Mean radius in m."""
        return self.mean_radius * KM

    @property
    def volume_m3(self):
        return 4.0 / 3.0 * math.pi * self.radius_m**3

    @property
    def surface_gravity(self):
        """m/s^2, from gm at the mean radius."""
        return self.gm * KM**3 / (self.radius_m**2)


def uranus():
    """Uranus with the ring/flyby gravity solution.

    J2/J4 are referenced to the 26,200 km equatorial radius of that
    solution.  k2/Q is the classical tidal ratio used for long-term
    satellite evolution studies.
    """
    return PlanetModel(
        gm=5_793_964.0,
        j2=3341.29e-6,
        j4=-30.44e-6,
        radius_ref=26_200.0,
        k2_over_q=5.2e-5,
    )


def miranda():
    return BodyPhysical(
        gm=4.4,
        mean_radius=235.8,
        r_a=240.4,
        r_b=234.2,
        r_c=232.9,
        density=1200.0,
    )


def umbriel():
    """Umbriel; no shape solution, so a sphere at the mean radius.

    The bulk density follows from GM and the mean radius.
    """
    gm = 81.5
    radius = 584.7
    mass = gm / G_KM
    volume = 4.0 / 3.0 * math.pi * (radius * KM) ** 3
    return BodyPhysical(
        gm=gm,
        mean_radius=radius,
        r_a=radius,
        r_b=radius,
        r_c=radius,
        density=mass / volume,
    )

"""Orbital elements, nonsingular variables, and resonant angles.

The dynamical state of each satellite is carried in the nonsingular
(Lagrangian) variables

    k = e cos(peri),  h = e sin(peri),
    q = gamma cos(node),  p = gamma sin(node),   gamma = sin(inc/2),

which stay regular at zero eccentricity and zero inclination.  The pair
state additionally tracks the exact resonant angle psi = 3*lam2 - lam5.
"""

import math
from dataclasses import dataclass

from .constants import DEG, wrap_angle
from .bodies import PlanetModel

# below this, pericenter/node are undefined and reported as 0 by convention
_ANGLE_EPS = 1e-14


@dataclass(frozen=True)
class OrbitalElements:
    """Classical mean elements: a [km], angles [rad], peri/node are longitudes."""

    a: float
    e: float
    inc: float
    peri: float
    node: float
    mean_longitude: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"semi-major axis must be positive, got {self.a}")
        if not 0.0 <= self.e < 1.0:
            raise ValueError(f"eccentricity must be in [0, 1), got {self.e}")
        if not 0.0 <= self.inc < math.pi:
            raise ValueError(f"inclination must be in [0, pi), got {self.inc}")

    @property
    def mean_anomaly(self):
        return wrap_angle(self.mean_longitude - self.peri)


@dataclass(frozen=True)
class SatelliteDynState:
    """Nonsingular orbital state of one satellite."""

    a: float
    k: float
    h: float
    q: float
    p: float
    mean_longitude: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"semi-major axis must be positive, got {self.a}")
        if self.k**2 + self.h**2 >= 1.0:
            raise ValueError("k^2 + h^2 must be < 1")
        if self.q**2 + self.p**2 >= 1.0:
            raise ValueError("q^2 + p^2 must be < 1")

    @property
    def phi(self):
        """sqrt(1 - e^2), in (0, 1]."""
        return math.sqrt(1.0 - self.k**2 - self.h**2)

    @property
    def z(self):
        """Complex eccentricity e*exp(i*peri)."""
        return complex(self.k, self.h)

    @property
    def zeta(self):
        """Complex inclination gamma*exp(i*node)."""
        return complex(self.q, self.p)


@dataclass(frozen=True)
class SystemState:
    """Joint state of the resonant pair plus the exact resonant angle."""

    sat_inner: SatelliteDynState
    sat_outer: SatelliteDynState
    psi: float
    epoch: float = 0.0   # yr

    @classmethod
    def from_states(cls, inner, outer, epoch=0.0):
        psi = wrap_angle(3.0 * outer.mean_longitude - inner.mean_longitude)
        return cls(sat_inner=inner, sat_outer=outer, psi=psi, epoch=epoch)


def mean_motion(a, planet: PlanetModel):
    """Keplerian mean motion sqrt(gm/a^3) in rad/s, a in km."""
    if a <= 0:
        raise ValueError(f"semi-major axis must be positive, got {a}")
    return math.sqrt(planet.gm / a**3)


def elements_to_state(el: OrbitalElements) -> SatelliteDynState:
    """Classical elements to nonsingular variables."""
    gamma = math.sin(0.5 * el.inc)
    return SatelliteDynState(
        a=el.a,
        k=el.e * math.cos(el.peri),
        h=el.e * math.sin(el.peri),
        q=gamma * math.cos(el.node),
        p=gamma * math.sin(el.node),
        mean_longitude=wrap_angle(el.mean_longitude),
    )


def state_to_elements(st: SatelliteDynState) -> OrbitalElements:
    """Nonsingular variables back to classical elements.

    When e or gamma is below 1e-14 the corresponding longitude is
    undefined; 0 is returned by convention.
    """
    e = math.hypot(st.k, st.h)
    gamma = math.hypot(st.q, st.p)
    peri = wrap_angle(math.atan2(st.h, st.k)) if e > _ANGLE_EPS else 0.0
    node = wrap_angle(math.atan2(st.p, st.q)) if gamma > _ANGLE_EPS else 0.0
    return OrbitalElements(
        a=st.a,
        e=e,
        inc=2.0 * math.asin(min(gamma, 1.0)),
        peri=peri,
        node=node,
        mean_longitude=wrap_angle(st.mean_longitude),
    )


def resonant_angles(sys: SystemState, el5: OrbitalElements, el2: OrbitalElements):
    """The six second-order resonant arguments theta_1..theta_6 of the 3:1.

    Defined through 2*theta_k = lam5 - 3*lam2 + (combination of nodes and
    pericenters); lam5 - 3*lam2 is taken from the exact resonant angle so
    the result stays meaningful when only psi is tracked.  All angles are
    returned in [0, 2*pi).
    """
    half_fast = -0.5 * sys.psi   # (lam5 - 3*lam2) / 2
    om5, om2 = el5.node, el2.node
    pe5, pe2 = el5.peri, el2.peri
    combos = (
        2.0 * om5,        # theta_1  [I5^2]
        om5 + om2,        # theta_2  [I5*I2]
        2.0 * om2,        # theta_3  [I2^2]
        2.0 * pe2,        # theta_4  [e2^2]
        pe5 + pe2,        # theta_5  [e5*e2]
        2.0 * pe5,        # theta_6  [e5^2]
    )
    return tuple(wrap_angle(half_fast + 0.5 * c) for c in combos)


def miranda_elements_j2000():
    """Mean elements of Miranda at J2000 (planetocentric equatorial frame)."""
    peri = 68.312 * DEG
    return OrbitalElements(
        a=129_900.0,
        e=0.0013,
        inc=4.338 * DEG,
        peri=peri,
        node=326.438 * DEG,
        mean_longitude=wrap_angle(peri + 311.330 * DEG),
    )


def umbriel_elements_j2000():
    """Mean elements of Umbriel at J2000."""
    peri = 84.709 * DEG
    return OrbitalElements(
        a=266_000.0,
        e=0.0039,
        inc=0.128 * DEG,
        peri=peri,
        node=33.485 * DEG,
        mean_longitude=wrap_angle(peri + 12.469 * DEG),
    )

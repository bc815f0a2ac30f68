"""1-D spherical heat conduction with radiogenic and tidal sources.

The interior is a homogeneous ice/rock mixture.  Temperature lives on a
uniform radial grid r = 0..R; the surface node is pinned to the fixed
equilibrium temperature and the center is a symmetry point.  Time
stepping is backward Euler on a vertex-centered finite-volume form, so
the scheme is unconditionally stable and discretely conservative.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_banded

from .constants import GYR, YEAR

# material properties of the two phases and of the homogeneous mixture
ICE = {"rho": 917.0, "cp": 888.7, "k": 5.4, "mu": 4.5e9}
SILICATE = {"rho": 2500.0, "cp": 920.0, "k": 4.2, "mu": 65e9}
MIXTURE_RHO = 1200.0
MIXTURE_CP = 900.0
MIXTURE_K = 5.2          # tabulated value; the volume-fraction rule gives 4.86
MIRANDA_X_S = 0.37       # silicate mass fraction
MIRANDA_F_S = 0.45       # silicate volume fraction
T_SURFACE = 84.0         # K, radiative equilibrium surface temperature

AGE = 4.56 * GYR         # reference epoch for isotopic abundances
PRESENT_SPECIFIC_POWER = 7e-12       # W per kg of silicate today
INITIAL_SHORT_LIVED_POWER = 2e-7     # W per kg of silicate at formation


@dataclass(frozen=True)
class MixtureProps:
    """Bulk thermal properties of the ice/rock mixture."""

    x_s: float        # silicate mass fraction
    f_s: float        # silicate volume fraction
    rho: float        # kg/m^3
    cp: float         # J/kg/K
    k_cond: float     # W/m/K

    @property
    def alpha_diff(self):
        """Thermal diffusivity k/(rho*cp), m^2/s."""
        return self.k_cond / (self.rho * self.cp)


def mixture_properties(x_s, f_s, rho, k_cond=None):
    """Mass/volume-fraction mixing of the phase properties.

    cp mixes by mass fraction, conductivity by volume fraction.  Pass
    k_cond to override the mixing-rule conductivity with a tabulated
    value (the two disagree at the percent level).
    """
    if not (0.0 <= x_s <= 1.0 and 0.0 <= f_s <= 1.0):
        raise ValueError("fractions must lie in [0, 1]")
    cp = x_s * SILICATE["cp"] + (1.0 - x_s) * ICE["cp"]
    k = f_s * SILICATE["k"] + (1.0 - f_s) * ICE["k"]
    if k_cond is not None:
        k = float(k_cond)
    return MixtureProps(x_s=x_s, f_s=f_s, rho=rho, cp=cp, k_cond=k)


def miranda_mixture():
    """Miranda's mixture with the tabulated bulk conductivity."""
    return mixture_properties(MIRANDA_X_S, MIRANDA_F_S, MIXTURE_RHO, k_cond=MIXTURE_K)


def mixture_from_density(rho):
    """Infer fractions from the bulk density and mix accordingly.

    Used for bodies without a tabulated composition: the volume fraction
    follows from rho = f_s*rho_s + (1-f_s)*rho_i.
    """
    f_s = (rho - ICE["rho"]) / (SILICATE["rho"] - ICE["rho"])
    f_s = min(max(f_s, 0.0), 1.0)
    x_s = f_s * SILICATE["rho"] / rho
    return mixture_properties(x_s, f_s, rho)


def conduction_timescale(props: MixtureProps, radius_m):
    """R^2/alpha in seconds."""
    return radius_m**2 / props.alpha_diff


# ---------------------------------------------------------------------------
# radiogenic heating


@dataclass(frozen=True)
class Isotope:
    name: str
    heat_rate: float       # W per kg of the isotope
    decay_lambda: float    # 1/s
    abundance: float       # isotope mass fraction of its carrier element
    concentration: float   # carrier element mass fraction in the silicates
    short_lived: bool


@dataclass(frozen=True)
class RadiogenicInventory:
    """Decay data plus calibrated element concentrations.

    Long-lived abundances are quoted at the present epoch and decay is
    applied backwards from there; short-lived abundances are the initial
    (formation) values.
    """

    isotopes: tuple
    age: float = AGE       # s between formation and the present epoch

    def specific_power(self, t_since_formation, short_lived=True, long_lived=True):
        """W per kg of silicate at time t (s after formation)."""
        t = t_since_formation
        total = 0.0
        for iso in self.isotopes:
            if iso.short_lived and not short_lived:
                continue
            if not iso.short_lived and not long_lived:
                continue
            rate = iso.heat_rate * iso.abundance * iso.concentration
            if iso.short_lived:
                total += rate * math.exp(-iso.decay_lambda * t)
            else:
                total += rate * math.exp(iso.decay_lambda * (self.age - t))
        return total


# decay data: heat rate per kg of parent isotope, decay constant, and the
# isotopic abundance of the carrier element (present for long-lived,
# initial for short-lived)
_DECAY_ROWS = [
    # name, H (W/kg), lambda (1/s), abundance, short_lived
    ("U238", 9.46e-5, 4.19e-18, 0.99275, False),
    ("U235", 5.69e-4, 3.12e-17, 0.00720, False),
    ("Th232", 2.64e-5, 1.56e-18, 1.0, False),
    ("K40", 2.92e-5, 1.72e-17, 1.17e-4, False),
    ("Al26", 4.55e-1, 3.06e-14, 5.8e-5, True),
    ("Fe60", 7.19e-2, 1.46e-14, 7e-7, True),
    ("Mn53", 6.38e-3, 5.87e-15, 9e-6, True),
]

# carrier-element concentrations in the rock, kg/kg, before calibration;
# long-lived set follows upper-mantle ratios, short-lived set chondritic
_BASE_CONCENTRATIONS = {
    "U238": 21e-9, "U235": 21e-9, "Th232": 80e-9, "K40": 240e-6,
    "Al26": 8.65e-3, "Fe60": 0.182, "Mn53": 1.9e-3,
}


def calibrated_inventory(
    present_total=PRESENT_SPECIFIC_POWER,
    initial_short_total=INITIAL_SHORT_LIVED_POWER,
    age=AGE,
):
    """Scale the concentration sets to hit the two heating anchors.

    The long-lived concentrations are scaled as a group so the total at
    t = age equals present_total; the short-lived ones so the total at
    t = 0 equals initial_short_total.  Relative element ratios within
    each group are preserved.
    """
    isotopes = [
        Isotope(name, h, lam, ab, _BASE_CONCENTRATIONS[name], short)
        for name, h, lam, ab, short in _DECAY_ROWS
    ]
    raw = RadiogenicInventory(tuple(isotopes), age=age)
    s_long = present_total / raw.specific_power(age, short_lived=False)
    s_short = initial_short_total / raw.specific_power(0.0, long_lived=False)
    scaled = tuple(
        replace(iso, concentration=iso.concentration * (s_short if iso.short_lived else s_long))
        for iso in isotopes
    )
    return RadiogenicInventory(scaled, age=age)


def radiogenic_power(t_years, inventory: RadiogenicInventory, **kw):
    """Specific radiogenic heating (W per kg of silicate) t_years after formation."""
    if t_years < 0:
        raise ValueError("time since formation must be nonnegative")
    return inventory.specific_power(t_years * YEAR, **kw)


def adiabatic_heating_rate(specific_power, cp=MIXTURE_CP):
    """Temperature rise rate (K/s) if the heating is stored, dT/dt = q/cp."""
    return specific_power / cp


# ---------------------------------------------------------------------------
# conduction solver


@dataclass(frozen=True)
class ThermalGrid:
    """Radial temperature profile with its material properties."""

    radii: np.ndarray      # m, uniform, radii[0] = 0, radii[-1] = R
    temps: np.ndarray      # K
    props: MixtureProps
    t_surf: float          # K

    def __post_init__(self):
        if self.radii.shape != self.temps.shape:
            raise ValueError("radii and temps must have matching shapes")
        if np.any(np.diff(self.radii) <= 0):
            raise ValueError("radii must be strictly increasing")
        if abs(self.temps[-1] - self.t_surf) > 1e-9:
            raise ValueError("surface node must sit at t_surf")
        if np.any(self.temps <= 0):
            raise ValueError("temperatures must be positive")

    @property
    def n_points(self):
        return self.radii.size

    @property
    def radius(self):
        return float(self.radii[-1])

    def with_temps(self, temps):
        return replace(self, temps=temps)


def uniform_grid(radius_m, n_points, props, t_surf, t_init=None):
    """Uniform grid at a constant temperature (defaults to t_surf)."""
    radii = np.linspace(0.0, radius_m, n_points)
    temps = np.full(n_points, t_surf if t_init is None else t_init, dtype=float)
    temps[-1] = t_surf
    return ThermalGrid(radii=radii, temps=temps, props=props, t_surf=t_surf)


def shell_volumes(radii):
    """Control volumes of the vertex-centered discretization."""
    faces = np.empty(radii.size + 1)
    faces[0] = radii[0]
    faces[-1] = radii[-1]
    faces[1:-1] = 0.5 * (radii[:-1] + radii[1:])
    return 4.0 / 3.0 * math.pi * (faces[1:] ** 3 - faces[:-1] ** 3)


def step_conduction(grid: ThermalGrid, dt, source=0.0):
    """Advance the profile by one implicit step.

    source is the volumetric heating in W/m^3 (scalar or per-node
    array).  The surface node stays pinned at t_surf and the center is
    a zero-flux symmetry point, which the finite-volume form enforces
    automatically (the inner face has zero area).
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    src = np.broadcast_to(np.asarray(source, dtype=float), grid.temps.shape)
    if not np.all(np.isfinite(src)):
        raise ValueError("source must be finite")

    r = grid.radii
    n = r.size
    dr = r[1] - r[0]
    vol = shell_volumes(r)
    area = 4.0 * math.pi * (0.5 * (r[:-1] + r[1:])) ** 2   # faces between nodes
    cond = grid.props.k_cond * area / dr                   # W/K per face
    cap = grid.props.rho * grid.props.cp * vol / dt        # W/K per node

    # rows: capacity*T_new - div(flux_new) = capacity*T_old + H*V
    ab = np.zeros((3, n))
    rhs = cap * grid.temps + src * vol
    ab[1, :] = cap
    ab[1, :-1] += cond
    ab[1, 1:] += cond
    ab[0, 1:] = -cond          # upper diagonal: A[j-1, j]
    ab[2, :-1] = -cond         # lower diagonal: A[j+1, j]
    # Dirichlet surface row; the interior row above keeps its coupling
    # to the (known) surface value through the upper diagonal
    ab[1, -1] = 1.0
    ab[2, -2] = 0.0
    rhs[-1] = grid.t_surf
    temps = solve_banded((1, 1), ab, rhs)
    if not np.all(np.isfinite(temps)):
        raise RuntimeError("conduction solve produced non-finite temperatures")
    return grid.with_temps(temps)


def energy_balance_residual(before: ThermalGrid, after: ThermalGrid, dt, source=0.0):
    """Relative defect of the discrete energy balance over one step.

    Interior energy change minus (deposited source + conductive inflow
    through the face below the surface node), normalized by the largest
    term.  Exactly zero up to roundoff for the implicit scheme.
    """
    src = np.broadcast_to(np.asarray(source, dtype=float), before.temps.shape)
    r = before.radii
    dr = r[1] - r[0]
    vol = shell_volumes(r)
    rc = before.props.rho * before.props.cp
    d_energy = rc * np.sum((after.temps[:-1] - before.temps[:-1]) * vol[:-1])
    deposited = dt * np.sum(src[:-1] * vol[:-1])
    face_area = 4.0 * math.pi * (0.5 * (r[-2] + r[-1])) ** 2
    inflow = dt * before.props.k_cond * face_area * (after.temps[-1] - after.temps[-2]) / dr
    scale = max(abs(d_energy), abs(deposited), abs(inflow), 1e-300)
    return abs(d_energy - deposited - inflow) / scale


def run_conduction(grid, duration, dt, source_fn=None, t0=0.0):
    """March the solver over a span with a time-dependent source.

    source_fn(t_seconds) must return the volumetric heating (scalar or
    per-node, W/m^3) at the step midpoint; None means no sources.
    """
    t = 0.0
    while t < duration - 1e-9 * duration:
        step = min(dt, duration - t)
        src = source_fn(t0 + t + 0.5 * step) if source_fn is not None else 0.0
        grid = step_conduction(grid, step, src)
        t += step
    return grid


def mean_temperature(grid: ThermalGrid):
    """Volume-weighted mean interior temperature."""
    vol = shell_volumes(grid.radii)
    return float(np.sum(grid.temps * vol) / np.sum(vol))


# ---------------------------------------------------------------------------
# initial profiles

# step schedule for Gyr-scale radiogenic integrations: fine while the
# short-lived isotopes are alive, coarse afterwards
_PROFILE_SCHEDULE = (
    (50e6 * YEAR, 0.02e6 * YEAR),
    (500e6 * YEAR, 0.2e6 * YEAR),
    (math.inf, 2e6 * YEAR),
)


def _radiogenic_source(inventory, props, include_short):
    """Volumetric source W/m^3: specific power diluted to the bulk."""

    def src(t):
        q = inventory.specific_power(t, short_lived=include_short)
        return q * props.x_s * props.rho

    return src


def evolve_radiogenic(grid, inventory, duration, include_short_lived):
    """Conduction with radiogenic sources only, from the given grid."""
    src = _radiogenic_source(inventory, grid.props, include_short_lived)
    t = 0.0
    for t_end, dt in _PROFILE_SCHEDULE:
        span = min(duration, t_end) - t
        if span <= 0:
            break
        grid = run_conduction(grid, span, dt, src, t0=t)
        t += span
    return grid


def initial_profiles(
    radius_m,
    props,
    inventory=None,
    t_surf=T_SURFACE,
    n_points=200,
    duration=4.6 * GYR,
):
    """Warm and cold starting profiles after a radiogenic-only history.

    Both integrate conduction from a uniform profile at t_surf over the
    full duration; the warm profile includes the short-lived isotopes,
    the cold one does not.  Returns (warm, cold).
    """
    if inventory is None:
        inventory = calibrated_inventory()
    start = uniform_grid(radius_m, n_points, props, t_surf)
    warm = evolve_radiogenic(start, inventory, duration, include_short_lived=True)
    cold = evolve_radiogenic(start, inventory, duration, include_short_lived=False)
    return warm, cold

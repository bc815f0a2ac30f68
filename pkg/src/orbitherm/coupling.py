"""Coupled orbital-thermal evolution of the resonant pair.

One macro-step of the loop:

  1. integrate the averaged dynamics (with the current tidal ratios in
     the migration terms) across the exchange interval;
  2. average e^2 over the interval and evaluate the tidal power of each
     satellite, with the equilibrium obliquity refreshed from the
     current (I, a);
  3. advance both thermal grids with radiogenic plus (uniform) tidal
     volumetric sources;
  4. re-evaluate mean temperature -> viscosity -> complex rigidity ->
     k2/Q of each satellite for the next interval.

The dynamics substep restarts its multistep history at each exchange,
which makes checkpointing at macro boundaries bit-exact.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import fastpath as fp
from .bodies import BodyPhysical, PlanetModel, miranda, umbriel, uranus
from .constants import DEG, GYR, YEAR, wrap_angle
from .disturbing import TermFlags
from .elements import (
    OrbitalElements,
    SystemState,
    elements_to_state,
    mean_motion,
    miranda_elements_j2000,
    umbriel_elements_j2000,
)
from .eom import AveragedModel, KaulaSettings
from .rheology import RheologyParams, tidal_response
from .thermal import (
    MixtureProps,
    T_SURFACE,
    calibrated_inventory,
    initial_profiles,
    mean_temperature,
    miranda_mixture,
    mixture_from_density,
    step_conduction,
    uniform_grid,
)
from .tides import dissipation_rate, equilibrium_obliquity, moments_of_inertia, node_rate

CHECKPOINT_VERSION = 1

PROFILE_WARM = "warm"
PROFILE_COLD = "cold"
PROFILE_UNIFORM = "uniform-equilibrium"


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class BodySetup:
    """Everything one satellite carries through the coupled run."""

    body: BodyPhysical
    mixture: MixtureProps
    rheology: RheologyParams
    t_surf: float = T_SURFACE
    initial_e: float = None        # None keeps the tabulated value
    initial_inc_deg: float = None


@dataclass(frozen=True)
class ScenarioConfig:
    """Declarative description of one coupled run."""

    inner: BodySetup
    outer: BodySetup
    planet: PlanetModel = field(default_factory=uranus)
    duration: float = 6e6                 # yr
    dyn_step: float = 17.0 / 300.0        # yr
    macro_step: float = 100.0             # yr
    output_every: int = 10                # macro steps per emitted record row
    thermal_profile: str = PROFILE_WARM
    uniform_t_init: float = None          # for the uniform profile choice
    n_grid_points: int = 200
    auto_place: bool = True
    place_offset_km: float = None         # None: capture within first 5%
    a_inner_init: float = None            # used when auto_place is False
    include_radiogenic: bool = True
    formation_age: float = 4.56e9         # yr before the run start
    label: str = "scenario"

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("duration must be nonnegative")
        if self.macro_step < self.dyn_step:
            raise ValueError("macro_step must be at least the dynamic step")
        if self.thermal_profile not in (PROFILE_WARM, PROFILE_COLD, PROFILE_UNIFORM):
            raise ValueError(f"unknown thermal profile {self.thermal_profile!r}")


RECORD_COLUMNS = (
    "t_yr",
    "a5_km", "e5", "i5_deg", "theta6_librating",
    "tmean5_K", "q5", "k2q5", "dedt5_W",
    "a2_km", "e2", "i2_deg",
    "tmean2_K", "q2", "k2q2", "dedt2_W",
)


@dataclass
class SimulationRecord:
    """Emitted time series of the coupled run."""

    columns: tuple = RECORD_COLUMNS
    rows: list = field(default_factory=list)

    def append(self, **kw):
        self.rows.append(tuple(kw[c] for c in self.columns))

    def as_array(self):
        return np.array(self.rows) if self.rows else np.empty((0, len(self.columns)))

    def column(self, name):
        return self.as_array()[:, self.columns.index(name)]

    def summary(self):
        if not self.rows:
            return {}
        arr = self.as_array()
        col = self.columns.index
        captured = bool(np.any(arr[:, col("theta6_librating")] > 0.5))
        return {
            "final_e5": float(arr[-1, col("e5")]),
            "max_e5": float(np.max(arr[:, col("e5")])),
            "delta_tmean5_K": float(arr[-1, col("tmean5_K")] - arr[0, col("tmean5_K")]),
            "min_q5": float(np.min(arr[:, col("q5")])),
            "max_k2q5": float(np.max(arr[:, col("k2q5")])),
            "captured": captured,
        }


# ---------------------------------------------------------------------------
# presets


def nominal_preset(duration=6e6, **overrides):
    """Capture of the pair into the e^2-type resonance from low e.

    Current elements, semi-major axis auto-placed below the resonance,
    both eccentricities started small, Maxwell rheology, warm profile.
    """
    inner = BodySetup(
        body=miranda(),
        mixture=miranda_mixture(),
        rheology=RheologyParams(model="maxwell"),
        initial_e=5e-4,
        initial_inc_deg=4.5,
    )
    outer = BodySetup(
        body=umbriel(),
        mixture=mixture_from_density(umbriel().density),
        rheology=RheologyParams(model="maxwell"),
        initial_e=5e-4,
    )
    cfg = ScenarioConfig(inner=inner, outer=outer, duration=duration,
                         label="nominal")
    return replace(cfg, **overrides) if overrides else cfg


def extremal_preset(model="burgers", duration=6e6, **overrides):
    """High initial eccentricity with a low melting temperature.

    e5 starts at 0.5 inside the resonance; the melting temperature is
    lowered to 200 K so the viscosity can respond.
    """
    rheo = RheologyParams(
        model=model,
        t_melt=200.0,
        burgers_eta_ratio=50.0,
        andrade_alpha=0.33,
        andrade_beta=1e-13,
    )
    inner = BodySetup(
        body=miranda(),
        mixture=miranda_mixture(),
        rheology=rheo,
        initial_e=0.5,
        initial_inc_deg=4.5,
    )
    outer = BodySetup(
        body=umbriel(),
        mixture=mixture_from_density(umbriel().density),
        rheology=RheologyParams(model=model, t_melt=200.0,
                                burgers_eta_ratio=50.0, andrade_beta=1e-13),
        initial_e=umbriel_elements_j2000().e,
    )
    cfg = ScenarioConfig(inner=inner, outer=outer, duration=duration,
                         place_offset_km=0.0, label=f"extremal-{model}")
    return replace(cfg, **overrides) if overrides else cfg


# ---------------------------------------------------------------------------
# initial placement


def _initial_elements(config):
    el5 = miranda_elements_j2000()
    el2 = umbriel_elements_j2000()
    if config.inner.initial_e is not None:
        el5 = replace(el5, e=config.inner.initial_e)
    if config.inner.initial_inc_deg is not None:
        el5 = replace(el5, inc=config.inner.initial_inc_deg * DEG)
    if config.outer.initial_e is not None:
        el2 = replace(el2, e=config.outer.initial_e)
    if config.outer.initial_inc_deg is not None:
        el2 = replace(el2, inc=config.outer.initial_inc_deg * DEG)
    return el5, el2


def resonance_center_a5(config, el5, el2):
    """Semi-major axis where the e5^2 argument is stationary.

    Solves d(2 theta6)/dt = 2 dpomega5/dt - dpsi/dt = 0 by bisection on
    the averaged model's instantaneous rates (small-e probe elements).
    """
    # secular-only probe at small e: the resonant terms would fold the
    # (arbitrary) initial phase into the location estimate
    model = AveragedModel(
        config.planet, config.inner.body, config.outer.body,
        flags=TermFlags(resonant=False, secular=True, oblateness=True, indirect=False),
    )
    el5p = replace(el5, e=1e-3)

    def rate(a5):
        el = replace(el5p, a=a5)
        y = model.state_to_vector(
            SystemState.from_states(elements_to_state(el), elements_to_state(el2))
        )
        dy = model.derivatives(y)
        z5 = complex(y[1], y[2])
        dz5 = complex(dy[1], dy[2])
        return 2.0 * (dz5 / z5).imag - dy[10]

    lo, hi = 127_600.0, 128_300.0
    flo = rate(lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = rate(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < 1e-6:
            break
    return 0.5 * (lo + hi)


def place_at_resonance(config: ScenarioConfig):
    """Initial SystemState with a5 set just below the resonance center.

    The default offset is sized so the planet-driven outward migration
    reaches the center within the first 5% of the run.
    """
    el5, el2 = _initial_elements(config)
    a_res = resonance_center_a5(config, el5, el2)
    offset = config.place_offset_km
    if offset is None:
        from .tides import semi_major_rate

        rate_km_per_yr = semi_major_rate(
            a_res, el5.e, config.planet, config.inner.body,
            config.planet.k2_over_q, 0.0,
        ) * YEAR
        offset = max(0.05 * config.duration * rate_km_per_yr, 0.0)
    el5 = replace(el5, a=a_res - offset)
    return SystemState.from_states(elements_to_state(el5), elements_to_state(el2))


# ---------------------------------------------------------------------------
# the coupled loop


def _build_grid(setup: BodySetup, config):
    radius = setup.body.radius_m
    if config.thermal_profile == PROFILE_UNIFORM:
        t0 = config.uniform_t_init if config.uniform_t_init is not None else setup.t_surf
        return uniform_grid(radius, config.n_grid_points, setup.mixture,
                            setup.t_surf, t_init=t0)
    warm, cold = initial_profiles(
        radius, setup.mixture, inventory=calibrated_inventory(),
        t_surf=setup.t_surf, n_points=config.n_grid_points,
    )
    return warm if config.thermal_profile == PROFILE_WARM else cold


def _averaged_params(config, k2q5, k2q2):
    p = np.zeros(15)
    pl = config.planet
    p[fp.P_GM], p[fp.P_J2], p[fp.P_J4], p[fp.P_RP] = pl.gm, pl.j2, pl.j4, pl.radius_ref
    p[fp.P_GM5], p[fp.P_GM2] = config.inner.body.gm, config.outer.body.gm
    p[fp.P_FRES] = p[fp.P_FSEC] = p[fp.P_FOBL] = p[fp.P_FIND] = 1.0
    p[fp.P_K2QP], p[fp.P_K2Q5], p[fp.P_K2Q2] = pl.k2_over_q, k2q5, k2q2
    p[fp.P_R5], p[fp.P_R2] = config.inner.body.mean_radius, config.outer.body.mean_radius
    return p


def _obliquity(setup: BodySetup, a, inc, planet):
    mom = moments_of_inertia(
        setup.body.density,
        setup.body.r_a * 1e3, setup.body.r_b * 1e3, setup.body.r_c * 1e3,
    )
    n = mean_motion(a, planet)
    try:
        return equilibrium_obliquity(inc, n, node_rate(a, inc, planet), mom)
    except ValueError:
        return 0.0


class _LibrationMonitor:
    """Peak-to-peak test of the doubled resonant argument over a window."""

    def __init__(self, window_years=600.0):
        self.window = window_years
        self.times = []
        self.values = []
        self.last = None

    def add(self, t_yr, two_theta6):
        # unwrap incrementally
        if self.last is None:
            unwrapped = two_theta6
        else:
            step = (two_theta6 - self.last[1] + math.pi) % (2 * math.pi) - math.pi
            unwrapped = self.last[0] + step
        self.last = (unwrapped, two_theta6)
        self.times.append(t_yr)
        self.values.append(unwrapped)
        cut = t_yr - self.window
        while self.times and self.times[0] < cut:
            self.times.pop(0)
            self.values.pop(0)

    def librating(self):
        if len(self.values) < 8:
            return False
        return (max(self.values) - min(self.values)) < 2.0 * math.pi * 0.95


@dataclass
class CoupledState:
    """Mutable run state carried between macro steps."""

    y: np.ndarray
    t_years: float
    grid_inner: object
    grid_outer: object
    k2q: tuple
    macro_index: int = 0


def _initial_coupled_state(config):
    if config.auto_place:
        sys0 = place_at_resonance(config)
    else:
        el5, el2 = _initial_elements(config)
        if config.a_inner_init is not None:
            el5 = replace(el5, a=config.a_inner_init)
        sys0 = SystemState.from_states(elements_to_state(el5), elements_to_state(el2))
    model = AveragedModel(config.planet, config.inner.body, config.outer.body)
    y = model.state_to_vector(sys0)
    grid5 = _build_grid(config.inner, config)
    grid2 = _build_grid(config.outer, config)
    k2q5 = _tidal_ratio(config.inner, grid5, y[0], config.planet)
    k2q2 = _tidal_ratio(config.outer, grid2, y[5], config.planet)
    return CoupledState(y=y, t_years=0.0, grid_inner=grid5, grid_outer=grid2,
                        k2q=(k2q5, k2q2))


def _tidal_ratio(setup, grid, a, planet):
    resp = tidal_response(mean_temperature(grid), mean_motion(a, planet),
                          setup.body, setup.rheology)
    return resp.k2_over_q


def run_coupled(config: ScenarioConfig, state: CoupledState = None,
                record: SimulationRecord = None, checkpoint_path=None,
                checkpoint_every=0):
    """Run (or resume) the coupled loop; returns the SimulationRecord."""
    inv = calibrated_inventory() if config.include_radiogenic else None
    if state is None:
        state = _initial_coupled_state(config)
    record = record if record is not None else SimulationRecord()
    monitor = _LibrationMonitor(window_years=max(6.0 * config.macro_step, 600.0))

    n_sub = max(1, int(round(config.macro_step / config.dyn_step)))
    dt = config.dyn_step * YEAR
    macro_years = n_sub * config.dyn_step
    n_macro = int(math.ceil(config.duration / macro_years)) if config.duration > 0 else 0
    sample_every = max(1, n_sub // 40)

    if n_macro > 0 and state.macro_index == 0 and not record.rows:
        _emit_row(record, config, state, monitor, (0.0, 0.0))

    while state.macro_index < n_macro:
        params = _averaged_params(config, state.k2q[0], state.k2q[1])
        samples, stats = fp.integrate_averaged(state.y, dt, n_sub, params, sample_every)
        if not np.all(np.isfinite(samples[-1, 1:])):
            raise RuntimeError(
                f"non-finite dynamical state at macro step {state.macro_index}"
            )
        for row in samples[1:]:
            t_abs = state.t_years + row[0] / YEAR
            two_theta6 = wrap_angle(2.0 * math.atan2(row[3], row[2]) - row[11])
            monitor.add(t_abs, two_theta6)
        state.y = samples[-1, 1:].copy()
        state.t_years += macro_years
        state.macro_index += 1

        # tidal power over the elapsed interval, from the mean e^2
        mean_e5_sq, mean_e2_sq = stats[2], stats[3]
        pl = config.planet
        powers = []
        for setup, a, mean_e_sq, grid in (
            (config.inner, state.y[0], mean_e5_sq, state.grid_inner),
            (config.outer, state.y[5], mean_e2_sq, state.grid_outer),
        ):
            inc = 2.0 * math.asin(min(1.0, math.hypot(
                state.y[3 if setup is config.inner else 8],
                state.y[4 if setup is config.inner else 9])))
            eps = _obliquity(setup, a, inc, pl)
            k2q = state.k2q[0 if setup is config.inner else 1]
            n = mean_motion(a, pl)
            powers.append(dissipation_rate(
                k2q, pl.gm, n, setup.body.mean_radius, a,
                math.sqrt(mean_e_sq), eps))

        # thermal macro step with radiogenic + uniform tidal sources
        macro_seconds = macro_years * YEAR
        new_grids = []
        for setup, grid, power in (
            (config.inner, state.grid_inner, powers[0]),
            (config.outer, state.grid_outer, powers[1]),
        ):
            source = power / setup.body.volume_m3
            if inv is not None:
                t_mid = (config.formation_age + state.t_years - 0.5 * macro_years) * YEAR
                source = source + (inv.specific_power(t_mid)
                                   * grid.props.x_s * grid.props.rho)
            new_grids.append(step_conduction(grid, macro_seconds, source))
        state.grid_inner, state.grid_outer = new_grids

        k2q5 = _tidal_ratio(config.inner, state.grid_inner, state.y[0], pl)
        k2q2 = _tidal_ratio(config.outer, state.grid_outer, state.y[5], pl)
        state.k2q = (k2q5, k2q2)

        if state.macro_index % config.output_every == 0 or state.macro_index == n_macro:
            _emit_row(record, config, state, monitor, powers)
        if checkpoint_path and checkpoint_every > 0 \
                and state.macro_index % checkpoint_every == 0:
            save_checkpoint(checkpoint_path, config, state, record)
    return record


def _emit_row(record, config, state, monitor, powers):
    pl = config.planet
    resp5 = tidal_response(mean_temperature(state.grid_inner),
                           mean_motion(state.y[0], pl),
                           config.inner.body, config.inner.rheology)
    resp2 = tidal_response(mean_temperature(state.grid_outer),
                           mean_motion(state.y[5], pl),
                           config.outer.body, config.outer.rheology)
    record.append(
        t_yr=state.t_years,
        a5_km=state.y[0],
        e5=math.hypot(state.y[1], state.y[2]),
        i5_deg=2.0 * math.asin(min(1.0, math.hypot(state.y[3], state.y[4]))) / DEG,
        theta6_librating=float(monitor.librating()),
        tmean5_K=mean_temperature(state.grid_inner),
        q5=resp5.q_factor,
        k2q5=resp5.k2_over_q,
        dedt5_W=powers[0],
        a2_km=state.y[5],
        e2=math.hypot(state.y[6], state.y[7]),
        i2_deg=2.0 * math.asin(min(1.0, math.hypot(state.y[8], state.y[9]))) / DEG,
        tmean2_K=mean_temperature(state.grid_outer),
        q2=resp2.q_factor,
        k2q2=resp2.k2_over_q,
        dedt2_W=powers[1],
    )


# ---------------------------------------------------------------------------
# checkpointing


def config_digest(config: ScenarioConfig):
    """Stable digest of the scenario definition."""

    def enc(obj):
        if isinstance(obj, (int, float, str, bool, type(None))):
            return obj
        if isinstance(obj, tuple):
            return [enc(v) for v in obj]
        if hasattr(obj, "__dataclass_fields__"):
            return {k: enc(getattr(obj, k)) for k in sorted(obj.__dataclass_fields__)}
        return repr(obj)

    payload = json.dumps(enc(config), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def save_checkpoint(path, config, state: CoupledState, record: SimulationRecord):
    header = json.dumps({
        "version": CHECKPOINT_VERSION,
        "config_digest": config_digest(config),
        "macro_index": state.macro_index,
        "t_years": state.t_years,
        "k2q": list(state.k2q),
    })
    np.savez(
        path,
        header=np.frombuffer(header.encode(), dtype=np.uint8),
        y=state.y,
        temps_inner=state.grid_inner.temps,
        temps_outer=state.grid_outer.temps,
        rows=np.array(record.rows) if record.rows else np.empty((0, len(RECORD_COLUMNS))),
    )


def load_checkpoint(path, config: ScenarioConfig):
    """Rebuild (state, record); refuses version or config mismatches."""
    try:
        data = np.load(path)
        header = json.loads(bytes(data["header"]).decode())
    except Exception as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if header.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint version {header.get('version')} != {CHECKPOINT_VERSION}"
        )
    if header.get("config_digest") != config_digest(config):
        raise CheckpointError("checkpoint belongs to a different configuration")
    base = _initial_coupled_state(config)
    state = CoupledState(
        y=data["y"].copy(),
        t_years=float(header["t_years"]),
        grid_inner=base.grid_inner.with_temps(data["temps_inner"].copy()),
        grid_outer=base.grid_outer.with_temps(data["temps_outer"].copy()),
        k2q=tuple(header["k2q"]),
        macro_index=int(header["macro_index"]),
    )
    record = SimulationRecord()
    record.rows = [tuple(r) for r in data["rows"]]
    return state, record

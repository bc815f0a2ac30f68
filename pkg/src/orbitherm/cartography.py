"""Phase-space map sweeps: grids of short integrations near the 3:1.

Each cell starts from the reference J2000 elements with its own initial
mean anomaly and semi-major axis of the inner satellite, runs for the
configured span, and records the excursion max(a5) - min(a5).  Libration
islands pin the semi-major axis (small excursion, light shade); the
separatrix produces the largest excursions (dark shade).
"""

import math
import multiprocessing as mp
from dataclasses import dataclass, field, replace

import numpy as np

from . import fastpath as fp
from .bodies import uranus, miranda, umbriel
from .constants import DAY, DEG, YEAR, wrap_angle
from .elements import (
    OrbitalElements,
    SystemState,
    elements_to_state,
    miranda_elements_j2000,
    umbriel_elements_j2000,
)
from .eom import AveragedModel
from .kepler import state_from_elements

AVERAGED = "averaged"
DIRECT = "direct"

# caption ranges of the reference maps; the direct (osculating) window is
# offset from the averaged (mean-element) one by the constant J2 term
DEFAULT_RANGES = {
    AVERAGED: (127_820.0, 127_870.0),
    DIRECT: (127_850.0, 127_900.0),
}


@dataclass(frozen=True)
class MapSpec:
    """Grid definition for one phase-space map."""

    model: str = AVERAGED
    n_a: int = 100
    n_m: int = 100
    a_lo: float = None
    a_hi: float = None
    span: float = 1500.0             # yr
    step: float = 17.0 / 300.0       # yr (averaged model)
    step_days: float = 1.0 / 80.0    # direct model
    inclination_deg: float = 4.338

    def __post_init__(self):
        if self.model not in (AVERAGED, DIRECT):
            raise ValueError(f"unknown map model {self.model!r}")
        if self.n_a < 2 or self.n_m < 2:
            raise ValueError("grid must be at least 2x2")
        if self.span <= 0:
            raise ValueError("span must be positive")
        lo, hi = DEFAULT_RANGES[self.model]
        if self.a_lo is None:
            object.__setattr__(self, "a_lo", lo)
        if self.a_hi is None:
            object.__setattr__(self, "a_hi", hi)
        if not self.a_hi > self.a_lo:
            raise ValueError("a_hi must exceed a_lo")

    @property
    def a_values(self):
        return np.linspace(self.a_lo, self.a_hi, self.n_a)

    @property
    def m_values_deg(self):
        return np.linspace(0.0, 360.0, self.n_m, endpoint=False)


@dataclass
class MapResult:
    """Excursion matrix delta_a[a_index, m_index] in km plus axes."""

    spec: MapSpec
    a_values: np.ndarray
    m_values_deg: np.ndarray
    delta_a: np.ndarray

    def finite_fraction(self):
        return float(np.mean(np.isfinite(self.delta_a)))


def _averaged_params():
    u, mir, umb = uranus(), miranda(), umbriel()
    p = np.zeros(15)
    p[fp.P_GM], p[fp.P_J2], p[fp.P_J4], p[fp.P_RP] = u.gm, u.j2, u.j4, u.radius_ref
    p[fp.P_GM5], p[fp.P_GM2] = mir.gm, umb.gm
    p[fp.P_FRES] = p[fp.P_FSEC] = p[fp.P_FOBL] = p[fp.P_FIND] = 1.0
    p[fp.P_R5], p[fp.P_R2] = mir.mean_radius, umb.mean_radius
    return p


def _direct_params():
    u, mir, umb = uranus(), miranda(), umbriel()
    return np.array([u.gm, u.j2, u.j4, u.radius_ref, mir.gm, umb.gm])


def _cell_initial_elements(spec, a5, m5_deg):
    el5 = miranda_elements_j2000()
    el2 = umbriel_elements_j2000()
    el5 = OrbitalElements(
        a=a5,
        e=el5.e,
        inc=spec.inclination_deg * DEG,
        peri=el5.peri,
        node=el5.node,
        mean_longitude=wrap_angle(el5.peri + m5_deg * DEG),
    )
    return el5, el2


def cell_delta_a(spec: MapSpec, a5, m5_deg):
    """Excursion of a5 for one cell; NaN when the integration fails."""
    try:
        el5, el2 = _cell_initial_elements(spec, a5, m5_deg)
        if spec.model == AVERAGED:
            model = AveragedModel(uranus(), miranda(), umbriel())
            y0 = model.state_to_vector(
                SystemState.from_states(elements_to_state(el5), elements_to_state(el2))
            )
            dt = spec.step * YEAR
            n_steps = int(round(spec.span / spec.step))
            _, stats = fp.integrate_averaged(y0, dt, n_steps, _averaged_params(),
                                             n_steps + 1)
            return stats[1] - stats[0]
        u, mir, umb = uranus(), miranda(), umbriel()
        p5, v5 = state_from_elements(el5.a, el5.e, el5.inc, el5.node, el5.peri,
                                     el5.mean_longitude, u.gm + mir.gm)
        p2, v2 = state_from_elements(el2.a, el2.e, el2.inc, el2.node, el2.peri,
                                     el2.mean_longitude, u.gm + umb.gm)
        y0 = np.concatenate([p5, v5, p2, v2])
        dt = spec.step_days * DAY
        n_steps = int(round(spec.span * YEAR / dt))
        _, stats = fp.integrate_direct(y0, dt, n_steps, _direct_params(), n_steps + 1)
        return stats[1] - stats[0]
    except Exception:
        return math.nan


def _cell_task(args):
    spec, i, j, a5, m5 = args
    return i, j, cell_delta_a(spec, a5, m5)


def run_map(spec: MapSpec, workers=1) -> MapResult:
    """Sweep the grid; deterministic for any worker count.

    Cells are independent; results are gathered by index, so the output
    never depends on scheduling.  Failed cells hold NaN.
    """
    a_vals = spec.a_values
    m_vals = spec.m_values_deg
    delta = np.full((spec.n_a, spec.n_m), np.nan)
    tasks = [
        (spec, i, j, float(a_vals[i]), float(m_vals[j]))
        for i in range(spec.n_a)
        for j in range(spec.n_m)
    ]
    if workers <= 1:
        for t in tasks:
            i, j, val = _cell_task(t)
            delta[i, j] = val
    else:
        ctx = mp.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            for i, j, val in pool.imap_unordered(_cell_task, tasks, chunksize=4):
                delta[i, j] = val
    return MapResult(spec=spec, a_values=a_vals, m_values_deg=m_vals, delta_a=delta)


# ---------------------------------------------------------------------------
# analysis and export


def separatrix_centroid(result: MapResult, percentile=90.0):
    """a5 centroid of the strongest-excursion cells (the separatrix ring)."""
    delta = result.delta_a
    finite = np.isfinite(delta)
    if not np.any(finite):
        raise ValueError("map holds no finite cells")
    cut = np.percentile(delta[finite], percentile)
    mask = finite & (delta >= cut)
    weights = delta[mask]
    a_grid = np.broadcast_to(result.a_values[:, None], delta.shape)
    return float(np.sum(a_grid[mask] * weights) / np.sum(weights))


def export_map_text(result: MapResult, path, header_lines=()):
    """Delimited grid (a5_km, m5_deg, delta_a_km), 9 significant digits."""
    with open(path, "w") as f:
        for line in header_lines:
            f.write(f"# {line}\n")
        f.write("a5_km,m5_deg,delta_a_km\n")
        for i, a5 in enumerate(result.a_values):
            for j, m5 in enumerate(result.m_values_deg):
                f.write(f"{a5:.8e},{m5:.8e},{result.delta_a[i, j]:.8e}\n")


def read_map_text(path):
    """Inverse of export_map_text; returns (a_values, m_values, delta_a)."""
    rows = []
    with open(path) as f:
        for line in f:
            if line.startswith("#") or line.startswith("a5_km"):
                continue
            rows.append([float(x) for x in line.strip().split(",")])
    arr = np.array(rows)
    a_vals = np.unique(arr[:, 0])
    m_vals = np.unique(arr[:, 1])
    delta = np.full((a_vals.size, m_vals.size), np.nan)
    ai = np.searchsorted(a_vals, arr[:, 0])
    mi = np.searchsorted(m_vals, arr[:, 1])
    delta[ai, mi] = arr[:, 2]
    return a_vals, m_vals, delta


def export_map_image(result: MapResult, path, scale="linear"):
    """Binary PGM with a monotone shade: larger excursion, darker pixel.

    Rows run from large a5 (top) to small; NaN cells render mid-gray 128
    after the valid range is mapped to [0, 255].
    """
    delta = result.delta_a.copy()
    finite = np.isfinite(delta)
    vals = delta[finite]
    if scale == "log":
        floor = np.min(vals[vals > 0]) if np.any(vals > 0) else 1.0
        delta = np.log10(np.maximum(delta, floor))
        vals = delta[finite]
    elif scale != "linear":
        raise ValueError(f"unknown scale {scale!r}")
    lo, hi = float(np.min(vals)), float(np.max(vals))
    span = hi - lo if hi > lo else 1.0
    shade = 255 - np.clip((delta - lo) / span * 255.0, 0, 255).astype(np.uint8)
    shade = np.where(finite, shade, np.uint8(128))
    img = shade[::-1, :]   # a5 decreasing downward
    with open(path, "wb") as f:
        f.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        f.write(img.tobytes())

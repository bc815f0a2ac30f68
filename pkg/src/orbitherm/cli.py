"""Command-line front end.

Subcommands: profile | simulate | map | estimate | rheology.
Shared flags: --config PATH, --out DIR, --workers N, --preset NAME.
All outputs are delimited text (plus a portable graymap for the maps),
stamped with the package version and the configuration digest.
"""

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, cartography
from .bodies import miranda, umbriel, uranus
from .config import ConfigError, PRESETS, build_scenario, config_digest, load_config
from .constants import GYR
from .coupling import load_checkpoint, run_coupled, _initial_coupled_state
from .elements import mean_motion, miranda_elements_j2000
from .output import header_lines, write_csv, write_key_values
from .rheology import (
    ANDRADE,
    BURGERS,
    MAXWELL,
    RheologyParams,
    q_versus_melting_temperature,
    tidal_response,
    viscosity,
)
from .thermal import (
    calibrated_inventory,
    initial_profiles,
    miranda_mixture,
    mixture_from_density,
)
from .tides import estimator_grid


@dataclass(frozen=True)
class RunManifest:
    """What a CLI invocation resolved to; stamped into every output."""

    subcommand: str
    config_path: str
    out_dir: str
    workers: int
    deterministic: bool
    version: str
    digest: str

    def header(self, extra=()):
        return header_lines(self.digest, list(extra))


def manifest_for(args, cfg):
    os.makedirs(args.out, exist_ok=True)
    if not os.access(args.out, os.W_OK):
        raise ConfigError(f"output directory not writable: {args.out}")
    return RunManifest(
        subcommand=args.command,
        config_path=args.config or "<defaults>",
        out_dir=args.out,
        workers=max(1, getattr(args, "workers", 1)),
        deterministic=True,
        version=__version__,
        digest=config_digest(cfg),
    )


def _parser():
    p = argparse.ArgumentParser(
        prog="orbitherm",
        description="Coupled orbital-thermal evolution of a resonant satellite pair",
    )
    p.add_argument("--version", action="version", version=f"orbitherm {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", default=None, help="YAML config file")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--preset", choices=PRESETS, default=None)

    sp = sub.add_parser("profile", help="emit warm/cold initial temperature profiles")
    common(sp)
    sp.add_argument("--points", type=int, default=None, help="radial grid points")

    sp = sub.add_parser("simulate", help="run a coupled orbital-thermal scenario")
    common(sp)
    sp.add_argument("--duration", type=float, default=None, help="years")
    sp.add_argument("--checkpoint", default=None, help="checkpoint file path")
    sp.add_argument("--checkpoint-every", type=int, default=0, help="macro steps")
    sp.add_argument("--resume", action="store_true",
                    help="resume from --checkpoint if it exists")

    sp = sub.add_parser("map", help="phase-space excursion map")
    common(sp)
    sp.add_argument("--model", choices=("averaged", "direct"), default=None)
    sp.add_argument("--grid", type=int, default=None, help="cells per axis")
    sp.add_argument("--span", type=float, default=None, help="years per cell")

    sp = sub.add_parser("estimate", help="tidal heating estimator over (e, Q)")
    common(sp)

    sp = sub.add_parser("rheology", help="Q versus melting temperature per model")
    common(sp)
    return p


def _effective_config(args, extra=None):
    overrides = {}
    if args.preset:
        overrides["preset"] = args.preset
    if extra:
        for path, value in extra.items():
            if value is None:
                continue
            node = overrides
            keys = path.split(".")
            for k in keys[:-1]:
                node = node.setdefault(k, {})
            node[keys[-1]] = value
    return load_config(args.config, overrides)


def cmd_profile(args):
    cfg = _effective_config(args, {"profile.grid_points": args.points})
    mf = manifest_for(args, cfg)
    digest = mf.digest
    n = int(cfg["profile"]["grid_points"])
    duration = float(cfg["profile"]["duration_gyr"]) * GYR
    inventory = calibrated_inventory()
    bodies = (
        ("miranda", miranda(), miranda_mixture()),
        ("umbriel", umbriel(), mixture_from_density(umbriel().density)),
    )
    for name, body, mixture in bodies:
        warm, cold = initial_profiles(body.radius_m, mixture, inventory,
                                      n_points=n, duration=duration)
        for tag, grid in (("warm", warm), ("cold", cold)):
            rows = [(r / 1e3, T) for r, T in zip(grid.radii, grid.temps)]
            write_csv(
                os.path.join(args.out, f"{name}_{tag}.csv"),
                ("r_km", "T_K"),
                rows,
                header=header_lines(digest, [f"body {name}", f"profile {tag}"]),
            )
    return 0


def cmd_simulate(args):
    cfg = _effective_config(args, {"scenario.duration_yr": args.duration})
    mf = manifest_for(args, cfg)
    digest = mf.digest
    scenario = build_scenario(cfg)
    state = record = None
    if args.resume and args.checkpoint and os.path.exists(args.checkpoint):
        state, record = load_checkpoint(args.checkpoint, scenario)
    record = run_coupled(
        scenario,
        state=state,
        record=record,
        checkpoint_path=args.checkpoint,
        checkpoint_every=args.checkpoint_every
        or int(cfg["scenario"]["checkpoint_every"]),
    )
    head = header_lines(digest, [f"preset {cfg['preset']}"])
    write_csv(os.path.join(args.out, "series.csv"), record.columns, record.rows,
              header=head)
    write_key_values(os.path.join(args.out, "summary.csv"),
                     sorted(record.summary().items()), header=head)
    return 0


def cmd_map(args):
    cfg = _effective_config(args, {
        "map.model": args.model,
        "map.grid_a": args.grid,
        "map.grid_m": args.grid,
        "map.span_yr": args.span,
    })
    mf = manifest_for(args, cfg)
    digest = mf.digest
    m = cfg["map"]
    spec = cartography.MapSpec(
        model=m["model"],
        n_a=int(m["grid_a"]),
        n_m=int(m["grid_m"]),
        a_lo=m["a_lo_km"],
        a_hi=m["a_hi_km"],
        span=float(m["span_yr"]),
        step=float(m["step_yr"]),
        step_days=float(m["step_days"]),
        inclination_deg=float(m["inclination_deg"]),
    )
    result = cartography.run_map(spec, workers=mf.workers)
    os.makedirs(args.out, exist_ok=True)
    cartography.export_map_text(
        result, os.path.join(args.out, "map.csv"),
        header_lines(digest, [f"model {spec.model}"]),
    )
    cartography.export_map_image(result, os.path.join(args.out, "map.pgm"),
                                 scale=m["scale"])
    return 0


def cmd_estimate(args):
    cfg = _effective_config(args)
    mf = manifest_for(args, cfg)
    digest = mf.digest
    est = cfg["estimate"]
    body = miranda()
    if est["k2"] is None:
        resp = tidal_response(84.0, mean_motion(129_900.0, uranus()), body,
                              RheologyParams(model=MAXWELL))
        k2 = resp.k2
    else:
        k2 = float(est["k2"])
    e_values = np.linspace(float(est["e_min"]), float(est["e_max"]), int(est["n_e"]))
    rows = estimator_grid(e_values, [float(q) for q in est["q_values"]],
                          k2, uranus(), body, miranda_elements_j2000())
    write_csv(
        os.path.join(args.out, "estimate.csv"),
        ("e", "q", "power_W", "dT_1Myr_K", "log10_dT"),
        rows,
        header=header_lines(digest, [f"k2 {k2:.8e}"]),
    )
    return 0


def cmd_rheology(args):
    cfg = _effective_config(args)
    mf = manifest_for(args, cfg)
    digest = mf.digest
    rc = cfg["rheology_curves"]
    tm_grid = np.linspace(float(rc["t_melt_min_K"]), float(rc["t_melt_max_K"]),
                          int(rc["n_points"]))
    omega = mean_motion(129_900.0, uranus())
    body = miranda()
    for model in (MAXWELL, BURGERS, ANDRADE):
        curve = q_versus_melting_temperature(
            float(rc["t_mean_K"]), omega, body, RheologyParams(model=model), tm_grid
        )
        write_csv(
            os.path.join(args.out, f"rheology_{model}.csv"),
            ("t_melt_K", "q_factor"),
            curve,
            header=header_lines(digest, [f"model {model}"]),
        )
    # companion viscosity table (temperature sweep at the default reference)
    params = RheologyParams()
    temps = np.linspace(60.0, params.t_melt, int(rc["n_points"]))
    write_csv(
        os.path.join(args.out, "viscosity.csv"),
        ("T_K", "eta_Pas"),
        [(t, viscosity(t, params)) for t in temps],
        header=header_lines(digest, [f"t_melt {params.t_melt}"]),
    )
    return 0


COMMANDS = {
    "profile": cmd_profile,
    "simulate": cmd_simulate,
    "map": cmd_map,
    "estimate": cmd_estimate,
    "rheology": cmd_rheology,
}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

"""Delimited-text emission with stable formatting.

Every file starts with comment lines carrying the package version and
the digest of the effective configuration, then a comma-separated
header row.  Numbers render in scientific notation with 9 significant
digits, so identical configurations produce byte-identical files.
"""

import math
import os

from . import __version__


def header_lines(digest, extra=()):
    lines = [f"orbitherm {__version__}", f"config {digest}"]
    lines.extend(extra)
    return lines


def format_number(x):
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{float(x):.8e}"


def write_csv(path, columns, rows, header=()):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        for line in header:
            f.write(f"# {line}\n")
        f.write(",".join(columns) + "\n")
        for row in rows:
            f.write(",".join(format_number(v) for v in row) + "\n")


def write_key_values(path, pairs, header=()):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        for line in header:
            f.write(f"# {line}\n")
        f.write("key,value\n")
        for key, value in pairs:
            f.write(f"{key},{format_number(value)}\n")


TRAJECTORY_COLUMNS = (
    "t_yr", "a5_km", "e5", "i5_deg", "theta1_deg", "theta6_deg",
    "a2_km", "e2", "i2_deg", "psi_deg",
)


def trajectory_rows(samples):
    """Element/angle rows from sampled averaged-model states.

    samples rows are [t_seconds, a5, k5, h5, q5, p5, a2, k2, h2, q2, p2, psi]
    as produced by the compiled integrator.
    """
    import math

    from .constants import DEG, YEAR, wrap_angle

    rows = []
    for r in samples:
        t, a5, k5, h5, q5, p5, a2, k2, h2, q2, p2, psi = r
        e5 = math.hypot(k5, h5)
        e2 = math.hypot(k2, h2)
        peri5 = math.atan2(h5, k5) if e5 > 1e-14 else 0.0
        node5 = math.atan2(p5, q5) if math.hypot(q5, p5) > 1e-14 else 0.0
        theta1 = wrap_angle(0.5 * (2.0 * node5 - psi))
        theta6 = wrap_angle(0.5 * (2.0 * peri5 - psi))
        rows.append((
            t / YEAR, a5, e5,
            2.0 * math.asin(min(1.0, math.hypot(q5, p5))) / DEG,
            theta1 / DEG, theta6 / DEG,
            a2, e2,
            2.0 * math.asin(min(1.0, math.hypot(q2, p2))) / DEG,
            wrap_angle(psi) / DEG,
        ))
    return rows


def export_trajectory(samples, path, header=()):
    """Delimited element/angle time series of an averaged-model run."""
    write_csv(path, TRAJECTORY_COLUMNS, trajectory_rows(samples), header=header)

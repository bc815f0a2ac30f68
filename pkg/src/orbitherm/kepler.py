"""Kepler-problem geometry: anomaly solver and element/state conversion."""

import math

import numpy as np

from .constants import wrap_angle


def solve_kepler(mean_anomaly, e, tol=1e-14, max_iter=50):
    """Eccentric anomaly from mean anomaly by Newton iteration.

    Accepts scalars or arrays; converges quadratically for e < 1.
    """
    m = np.asarray(mean_anomaly, dtype=float)
    ecc = np.clip(e, 0.0, 1.0 - 1e-15)
    E = np.where(ecc < 0.8, m, np.pi * np.ones_like(m))
    for _ in range(max_iter):
        f = E - ecc * np.sin(E) - m
        fp = 1.0 - ecc * np.cos(E)
        dE = f / fp
        E = E - dE
        if np.max(np.abs(dE)) < tol:
            break
    return E if E.shape else float(E)


def orbital_position(a, e, inc, node, peri, mean_longitude):
    """Planetocentric Cartesian position (km) for one set of elements.

    Vectorized over mean_longitude (and any broadcastable element).
    """
    lam = np.asarray(mean_longitude, dtype=float)
    m_anom = wrap_angle(lam - peri)
    E = solve_kepler(m_anom, e)
    cosE, sinE = np.cos(E), np.sin(E)
    # perifocal coordinates
    xf = a * (cosE - e)
    yf = a * math.sqrt(1.0 - e * e) * sinE
    argp = peri - node
    cw, sw = math.cos(argp), math.sin(argp)
    co, so = math.cos(node), math.sin(node)
    ci, si = math.cos(inc), math.sin(inc)
    x = (cw * co - sw * so * ci) * xf + (-sw * co - cw * so * ci) * yf
    y = (cw * so + sw * co * ci) * xf + (-sw * so + cw * co * ci) * yf
    z = (sw * si) * xf + (cw * si) * yf
    return np.stack(np.broadcast_arrays(x, y, z), axis=-1)


def state_from_elements(a, e, inc, node, peri, mean_longitude, gm):
    """Cartesian position and velocity (km, km/s) from classical elements."""
    m_anom = wrap_angle(mean_longitude - peri)
    E = solve_kepler(m_anom, e)
    cosE, sinE = math.cos(E), math.sin(E)
    n = math.sqrt(gm / a**3)
    xf = a * (cosE - e)
    yf = a * math.sqrt(1.0 - e * e) * sinE
    r = a * (1.0 - e * cosE)
    vxf = -a * n * sinE / (1.0 - e * cosE)
    vyf = a * n * math.sqrt(1.0 - e * e) * cosE / (1.0 - e * cosE)
    argp = peri - node
    cw, sw = math.cos(argp), math.sin(argp)
    co, so = math.cos(node), math.sin(node)
    ci, si = math.cos(inc), math.sin(inc)
    rot = np.array([
        [cw * co - sw * so * ci, -sw * co - cw * so * ci, so * si],
        [cw * so + sw * co * ci, -sw * so + cw * co * ci, -co * si],
        [sw * si, cw * si, ci],
    ])
    pos = rot @ np.array([xf, yf, 0.0])
    vel = rot @ np.array([vxf, vyf, 0.0])
    return pos, vel


def elements_from_state(pos, vel, gm):
    """Osculating classical elements (a, e, inc, node, peri, mean_longitude)."""
    r = np.linalg.norm(pos)
    v2 = float(np.dot(vel, vel))
    a = 1.0 / (2.0 / r - v2 / gm)
    hvec = np.cross(pos, vel)
    hnorm = np.linalg.norm(hvec)
    evec = np.cross(vel, hvec) / gm - pos / r
    e = float(np.linalg.norm(evec))
    inc = math.acos(max(-1.0, min(1.0, hvec[2] / hnorm)))
    nvec = np.array([-hvec[1], hvec[0], 0.0])
    nnorm = np.linalg.norm(nvec)
    if nnorm > 1e-12 * hnorm:
        node = wrap_angle(math.atan2(nvec[1], nvec[0]))
    else:
        node = 0.0
    if e > 1e-12:
        cosw = np.dot(nvec, evec) / (nnorm * e) if nnorm > 0 else evec[0] / e
        argw = math.acos(max(-1.0, min(1.0, cosw)))
        if evec[2] < 0:
            argw = 2.0 * math.pi - argw
        if nnorm <= 1e-12 * hnorm:
            argw = math.atan2(evec[1], evec[0])
        peri = wrap_angle(node + argw)
    else:
        peri = node
    # eccentric anomaly from position
    if e > 1e-12:
        sinE = float(np.dot(pos, vel)) / (math.sqrt(gm * a) * e)
        cosE = (1.0 - r / a) / e
        E = math.atan2(sinE, cosE)
        m_anom = E - e * math.sin(E)
    else:
        # circular: measure longitude in-plane from the node
        co, so, ci = math.cos(node), math.sin(node), math.cos(inc)
        xi = pos[0] * co + pos[1] * so
        eta = (-pos[0] * so + pos[1] * co) * ci + pos[2] * math.sin(inc)
        m_anom = math.atan2(eta, xi) + node - peri
    return a, e, inc, node, peri, wrap_angle(peri + m_anom)

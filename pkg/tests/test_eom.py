import math

import numpy as np
import pytest

from orbitherm import fastpath as fp
from orbitherm.bodies import miranda, umbriel, uranus
from orbitherm.constants import MYR, YEAR
from orbitherm.disturbing import TermFlags
from orbitherm.elements import (
    SystemState,
    elements_to_state,
    mean_motion,
    miranda_elements_j2000,
    umbriel_elements_j2000,
)
from orbitherm.eom import AveragedModel, KaulaSettings, equations_of_motion, momentum_integral
from orbitherm.integrators import abm10_integrate
from orbitherm.laplace import laplace_derivative
from orbitherm.tides import eccentricity_rate_ratio

U, MIR, UMB = uranus(), miranda(), umbriel()


def _j2000_vector(model, a5=None):
    el5, el2 = miranda_elements_j2000(), umbriel_elements_j2000()
    y = model.state_to_vector(
        SystemState.from_states(elements_to_state(el5), elements_to_state(el2))
    )
    if a5 is not None:
        y[0] = a5
    return y


def _params(flags=TermFlags(), kaula=KaulaSettings()):
    p = np.zeros(15)
    p[fp.P_GM], p[fp.P_J2], p[fp.P_J4], p[fp.P_RP] = U.gm, U.j2, U.j4, U.radius_ref
    p[fp.P_GM5], p[fp.P_GM2] = MIR.gm, UMB.gm
    p[fp.P_FRES] = float(flags.resonant)
    p[fp.P_FSEC] = float(flags.secular)
    p[fp.P_FOBL] = float(flags.oblateness)
    p[fp.P_FIND] = float(flags.indirect)
    p[fp.P_K2QP], p[fp.P_K2Q5], p[fp.P_K2Q2] = (
        kaula.k2q_planet, kaula.k2q_inner, kaula.k2q_outer)
    p[fp.P_R5], p[fp.P_R2] = MIR.mean_radius, UMB.mean_radius
    return p


def test_unperturbed_kepler_case():
    model = AveragedModel(U, MIR, UMB, flags=TermFlags(False, False, False, False))
    y = _j2000_vector(model)
    dy = model.derivatives(y)
    assert np.all(dy[:10] == 0.0)
    n5 = mean_motion(y[0], U)
    n2 = mean_motion(y[5], U)
    assert dy[10] == pytest.approx(3 * n2 - n5, rel=1e-15)


def test_named_derivative_wrapper():
    model = AveragedModel(U, MIR, UMB)
    el5, el2 = miranda_elements_j2000(), umbriel_elements_j2000()
    sys = SystemState.from_states(elements_to_state(el5), elements_to_state(el2))
    dv = equations_of_motion(sys, model)
    assert np.allclose(dv.as_array(), model.derivatives(model.state_to_vector(sys)))
    assert np.all(np.isfinite(dv.as_array()))


def test_secular_node_rate_matches_laplace_lagrange():
    # clean configuration: e = 0 both, outer inclination zero
    model = AveragedModel(U, MIR, UMB, flags=TermFlags(False, True, False, False))
    y = _j2000_vector(model)
    y[1] = y[2] = y[6] = y[7] = 0.0     # e5 = e2 = 0
    y[8] = y[9] = 0.0                    # I2 = 0
    dy = model.derivatives(y)
    zeta5 = complex(y[3], y[4])
    dzeta5 = complex(dy[3], dy[4])
    got = (dzeta5 / zeta5).imag
    alpha = y[0] / y[5]
    n5 = mean_motion(y[0], U)
    closed = -0.25 * n5 * (UMB.gm / U.gm) * alpha**2 * laplace_derivative(1.5, 1, alpha)
    assert got == pytest.approx(closed, rel=1e-9)


def test_fastpath_matches_reference():
    model = AveragedModel(U, MIR, UMB)
    params = _params()
    rng = np.random.default_rng(1)
    y0 = _j2000_vector(model, a5=127_845.0)
    vals = fp.build_table(y0[0] / y0[5])
    alpha0 = y0[0] / y0[5]
    for _ in range(25):
        y = y0.copy()
        y[0] *= 1 + rng.uniform(-1e-4, 1e-4)
        y[1:5] = rng.uniform(-0.1, 0.1, 4)
        y[6:10] = rng.uniform(-0.1, 0.1, 4)
        y[10] = rng.uniform(0, 2 * np.pi)
        d_fast = fp.averaged_rhs(y, params, vals, alpha0)
        d_ref = model.derivatives(y)
        assert np.allclose(d_fast, d_ref, rtol=5e-12, atol=1e-28)


def test_fastpath_kaula_matches_reference():
    kaula = KaulaSettings(k2q_planet=5.2e-5, k2q_inner=1e-5, k2q_outer=2e-6)
    model = AveragedModel(U, MIR, UMB, kaula=kaula)
    params = _params(kaula=kaula)
    y = _j2000_vector(model, a5=127_845.0)
    y[1], y[2] = 0.02, -0.01
    vals = fp.build_table(y[0] / y[5])
    d_fast = fp.averaged_rhs(y, params, vals, y[0] / y[5])
    d_ref = model.derivatives(y)
    assert np.allclose(d_fast, d_ref, rtol=5e-12, atol=1e-30)


@pytest.mark.slow
def test_momentum_integral_conserved_over_1500_years():
    model = AveragedModel(U, MIR, UMB)
    params = _params()
    dt = 17.0 / 300.0 * YEAR
    n_steps = int(round(1500.0 / (17.0 / 300.0)))
    for a5 in (127_845.0, 127_860.0):
        y = _j2000_vector(model, a5=a5)
        j0 = momentum_integral(y, U, MIR, UMB)
        samples, _ = fp.integrate_averaged(y, dt, n_steps, params, 300)
        drift = max(
            abs(momentum_integral(row[1:], U, MIR, UMB) - j0) / j0 for row in samples
        )
        assert drift < 1e-9


def test_kaula_only_exponential_damping():
    # constant-coefficient de/dt integrates to a pure exponential
    k2q_s = 1e-4
    a0 = 127_845.0
    rate = eccentricity_rate_ratio(a0, U, MIR, 0.0, k2q_s)
    assert rate < 0.0
    span = 1.0 * MYR
    _, y = abm10_integrate(lambda t, z: rate * z, [0.01], (0.0, span), span / 2000)
    assert y[0] == pytest.approx(0.01 * math.exp(rate * span), rel=1e-9)


@pytest.mark.slow
def test_kaula_damping_in_full_model():
    # small e so the feedback through a stays below the tolerance
    kaula = KaulaSettings(k2q_planet=0.0, k2q_inner=1e-4, k2q_outer=0.0)
    model = AveragedModel(U, MIR, UMB,
                          flags=TermFlags(False, False, False, False), kaula=kaula)
    y = _j2000_vector(model, a5=127_845.0)
    e0 = 1e-3
    y[1], y[2] = e0, 0.0
    rate = eccentricity_rate_ratio(y[0], U, MIR, 0.0, 1e-4)
    span = 1.0 * MYR
    dt = 50.0 * YEAR
    n = int(round(span / dt))
    params = _params(TermFlags(False, False, False, False), kaula)
    samples, _ = fp.integrate_averaged(y, dt, n, params, n)
    e_end = math.hypot(samples[-1, 2], samples[-1, 3])
    assert e_end == pytest.approx(e0 * math.exp(rate * span), rel=1e-6)


def test_kaula_signs_in_model():
    kaula = KaulaSettings(k2q_planet=5.2e-5, k2q_inner=0.0, k2q_outer=0.0)
    model = AveragedModel(U, MIR, UMB,
                          flags=TermFlags(False, False, False, False), kaula=kaula)
    y = _j2000_vector(model)
    dy = model.derivatives(y)
    assert dy[0] > 0.0          # planet tide pushes outward
    z5 = complex(y[1], y[2])
    dz5 = complex(dy[1], dy[2])
    assert (dz5 / z5).real > 0  # and pumps eccentricity


def test_trajectory_export(tmp_path):
    from orbitherm.output import TRAJECTORY_COLUMNS, export_trajectory
    model = AveragedModel(U, MIR, UMB)
    params = _params()
    y0 = _j2000_vector(model, a5=127_845.0)
    dt = 17.0 / 300.0 * YEAR
    samples, _ = fp.integrate_averaged(y0, dt, 600, params, 60)
    path = tmp_path / "traj.csv"
    export_trajectory(samples, path, header=["test"])
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
    body = np.array([[float(x) for x in l.split(",")] for l in lines[1:]])
    assert body.shape[1] == len(TRAJECTORY_COLUMNS)
    assert np.all(np.diff(body[:, 0]) > 0)                 # time increases
    assert np.all((body[:, 4] >= 0) & (body[:, 4] < 360))  # theta1 in range
    assert np.allclose(body[:, 1], 127_845.0, atol=50.0)   # a5 stays nearby

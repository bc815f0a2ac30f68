import cmath
import math

import numpy as np
import pytest

from orbitherm.bodies import miranda
from orbitherm.constants import DAY
from orbitherm.elements import mean_motion
from orbitherm.bodies import uranus
from orbitherm.rheology import (
    ANDRADE,
    BURGERS,
    MAXWELL,
    RheologyParams,
    love_number_k2,
    maxwell_time,
    q_versus_melting_temperature,
    rigidity_andrade,
    rigidity_burgers,
    rigidity_maxwell,
    tidal_response,
    viscosity,
    vrh_rigidity,
)

OMEGA_MIRANDA = mean_motion(129_900.0, uranus())


def test_viscosity_reference_point():
    p = RheologyParams()
    assert viscosity(p.t_melt, p) == pytest.approx(p.eta_ref, rel=1e-14)


def test_viscosity_monotone_decreasing():
    p = RheologyParams()
    temps = np.linspace(60.0, 273.0, 80)
    etas = [viscosity(t, p) for t in temps]
    assert all(a > b for a, b in zip(etas, etas[1:]))


def test_viscosity_direct_evaluation():
    p = RheologyParams(eta_ref=1e15, t_melt=273.0)
    expected = 1e15 * math.exp(50e3 / (8.31 * 273.0) * (273.0 / 250.0 - 1.0))
    assert viscosity(250.0, p) == pytest.approx(expected, rel=1e-14)


def test_viscosity_rejects_nonpositive_temperature():
    with pytest.raises(ValueError):
        viscosity(0.0, RheologyParams())


def test_vrh_mixture_value():
    voigt, reuss, hill = vrh_rigidity(0.37, 65e9, 4.5e9)
    assert abs(voigt - 27e9) < 0.5e9
    assert reuss < hill < voigt


def test_vrh_endpoints():
    for mu in (4.5e9, 65e9):
        v, r, h = vrh_rigidity(0.0, 65e9, mu) if mu != 65e9 else vrh_rigidity(1.0, mu, 4.5e9)
    v, r, h = vrh_rigidity(0.0, 65e9, 4.5e9)
    assert v == r == h == pytest.approx(4.5e9)
    v, r, h = vrh_rigidity(1.0, 65e9, 4.5e9)
    assert v == r == h == pytest.approx(65e9)


def test_vrh_rejects_zero_rigidity():
    with pytest.raises(ValueError):
        vrh_rigidity(0.5, 0.0, 4.5e9)


def test_maxwell_limits():
    mu = 27e9
    elastic = rigidity_maxwell(1e-2, mu, 1e30)      # omega*eta >> mu
    assert elastic.real == pytest.approx(mu, rel=1e-12)
    assert elastic.imag >= 0.0
    fluid = rigidity_maxwell(1e-7, mu, 1e10)        # omega*eta << mu
    assert abs(fluid) < 1e-3 * mu


def test_maxwell_loss_tangent_identity():
    rng = np.random.default_rng(7)
    for _ in range(50):
        omega = 10.0 ** rng.uniform(-7, -3)
        mu = 10.0 ** rng.uniform(9, 11)
        eta = 10.0 ** rng.uniform(12, 22)
        mt = rigidity_maxwell(omega, mu, eta)
        assert mt.imag / mt.real == pytest.approx(mu / (eta * omega), rel=1e-12)


def test_maxwell_against_compliance_oracle():
    # independent route: invert the Maxwell compliance 1/mu - i/(omega eta)
    omega, mu, eta = 5e-5, 27e9, 3e15
    oracle = 1.0 / complex(1.0 / mu, -1.0 / (omega * eta))
    assert rigidity_maxwell(omega, mu, eta) == pytest.approx(oracle, rel=1e-12)


def test_burgers_sweep_bounds_dissipative():
    mu = 27e9
    eta2 = 1e18
    for ratio in (17.0, 50.0):
        mt = rigidity_burgers(OMEGA_MIRANDA, mu, mu, eta2 / ratio, eta2)
        assert mt.imag > 0.0


def test_burgers_point_against_factored_form():
    # mu~ = i w (1 + i w eta1/mu1) / (C2 + i w C1), an independent
    # algebraic rearrangement of the component form
    omega, mu1, mu2, eta1, eta2 = 3e-5, 2.2e10, 1.8e10, 4e15, 9e16
    c1 = 1 / mu1 + eta1 / (mu1 * eta2) + 1 / mu2
    c2 = 1 / eta2 - eta1 * omega**2 / (mu1 * mu2)
    oracle = 1j * omega * (1 + 1j * omega * eta1 / mu1) / complex(c2, omega * c1)
    got = rigidity_burgers(omega, mu1, mu2, eta1, eta2)
    assert got == pytest.approx(oracle, rel=1e-12)


def test_burgers_high_frequency_stable():
    mu = 27e9
    for omega in (1e-3, 1.0, 1e3, 1e6):
        mt = rigidity_burgers(omega, mu, mu, 1e14, 5e15)
        assert cmath.isfinite(mt)
        assert mt.imag >= 0.0
    # elastic plateau: real part approaches the series spring constant
    hi = rigidity_burgers(1e6, mu, mu, 1e14, 5e15)
    assert 0.0 < hi.real < mu


def test_andrade_elastic_limit():
    mt = rigidity_andrade(1e-5, 27e9, 1e40, 0.33, 0.0)
    assert mt == pytest.approx(27e9, rel=1e-10)


def test_andrade_bracket_dissipative():
    for beta in (1e-13, 1e-11):
        mt = rigidity_andrade(OMEGA_MIRANDA, 27e9, 1e20, 0.33, beta)
        assert mt.imag > 0.0


def test_andrade_point_against_compliance_oracle():
    omega, mu, eta, alpha, beta = 5.1e-5, 27e9, 3e17, 0.33, 2e-12
    creep = beta * omega ** (-alpha) * math.gamma(1 + alpha)
    compliance = complex(
        1 / mu + creep * math.cos(alpha * math.pi / 2),
        -(1 / (eta * omega) + creep * math.sin(alpha * math.pi / 2)),
    )
    assert rigidity_andrade(omega, mu, eta, alpha, beta) == pytest.approx(
        1.0 / compliance, rel=1e-12
    )


def test_love_number_limits():
    assert love_number_k2(0.0, 1200.0, 0.079, 235.8e3) == pytest.approx(1.5)
    # 19 mu / (2 rho g R) = 1 -> k2 = 3/4
    rho, g, R = 1200.0, 0.079, 235.8e3
    mu = 2 * rho * g * R / 19.0
    assert love_number_k2(mu, rho, g, R) == pytest.approx(0.75, rel=1e-14)


def test_love_number_miranda_elastic():
    body = miranda()
    k2 = love_number_k2(27e9, body.density, body.surface_gravity, body.radius_m)
    expected = 1.5 / (1.0 + 19.0 * 27e9 / (2 * body.density * body.surface_gravity * body.radius_m))
    assert k2 == pytest.approx(expected, rel=1e-14)
    assert 1e-4 < abs(k2) < 2e-4


def test_cold_maxwell_is_effectively_elastic():
    resp = tidal_response(86.0, OMEGA_MIRANDA, miranda(), RheologyParams(model=MAXWELL))
    assert resp.q_factor > 1e15
    assert resp.k2_over_q < 1e-20


def test_q_ordering_at_nominal_state():
    body = miranda()
    q = {
        m: tidal_response(86.0, OMEGA_MIRANDA, body, RheologyParams(model=m)).q_factor
        for m in (MAXWELL, BURGERS, ANDRADE)
    }
    assert q[MAXWELL] > q[BURGERS]
    assert q[MAXWELL] > q[ANDRADE]


def test_q_curves_monotone_in_melting_temperature():
    body = miranda()
    tm_grid = np.linspace(150.0, 273.0, 40)
    for model in (MAXWELL, BURGERS, ANDRADE):
        curve = q_versus_melting_temperature(
            86.0, OMEGA_MIRANDA, body, RheologyParams(model=model), tm_grid
        )
        qs = [q for _, q in curve]
        assert all(b >= a * (1 - 1e-12) for a, b in zip(qs, qs[1:]))


def test_dissipative_over_parameter_box():
    body = miranda()
    rng = np.random.default_rng(11)
    for _ in range(60):
        omega = 10.0 ** rng.uniform(-7, -3)
        T = rng.uniform(60.0, 273.0)
        model = (MAXWELL, BURGERS, ANDRADE)[rng.integers(3)]
        resp = tidal_response(T, omega, body, RheologyParams(model=model))
        assert resp.mu_complex.imag >= 0.0
        assert resp.q_factor > 0.0
        assert 0.0 < resp.k2 <= 1.5


def test_love_number_bounds_in_rigidity():
    # k2 -> 3/2 for a fluid, -> 0 for an infinitely rigid body
    rho, g, R = 1200.0, 0.079, 235.8e3
    assert abs(love_number_k2(1e-30, rho, g, R) - 1.5) < 1e-12
    assert abs(love_number_k2(1e30, rho, g, R)) < 1e-12


def test_maxwell_time_order_of_days():
    tau_days = maxwell_time(1e15, 4.5e9) / DAY
    assert tau_days == pytest.approx(2.6, abs=0.1)


def test_params_validation():
    with pytest.raises(ValueError):
        RheologyParams(model="kelvin")
    with pytest.raises(ValueError):
        RheologyParams(model=ANDRADE, andrade_alpha=0.5)
    with pytest.raises(ValueError):
        RheologyParams(model=BURGERS, burgers_eta_ratio=5.0)

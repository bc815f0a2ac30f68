"""Viscoelastic tidal response: viscosity law, complex rigidity, Love number, Q.

Three rheological models are supported.  Each maps a forcing frequency
and a (temperature-dependent) viscosity to a complex rigidity mu~; the
degree-2 Love number of a homogeneous incompressible sphere then gives
the dissipation factor Q and the tidal ratio k2/Q that couples the
thermal state back into the orbital evolution.

Conventions: time dependence exp(i*omega*t), so a dissipative material
has Im(mu~) >= 0.  Q = |k2~| / |Im(k2~)| and k2/Q = |Im(k2~)|.
"""

import cmath
import math
from dataclasses import dataclass

from .constants import GAS_CONSTANT
from .bodies import BodyPhysical

MAXWELL = "maxwell"
BURGERS = "burgers"
ANDRADE = "andrade"
MODELS = (MAXWELL, BURGERS, ANDRADE)

# default elastic parameters of the ice/rock mixture
MU_MIXTURE = 27e9      # Pa
ETA_REF = 1e15         # Pa s, viscosity at the reference (melting) temperature
T_MELT_ICE = 273.0     # K
E_ACTIVATION = 50e3    # J/mol


@dataclass(frozen=True)
class RheologyParams:
    """Parameters of the viscoelastic model for one body."""

    model: str = MAXWELL
    mu_elastic: float = MU_MIXTURE     # Pa
    eta_ref: float = ETA_REF           # Pa s at T = t_melt
    t_melt: float = T_MELT_ICE         # K
    e_activation: float = E_ACTIVATION
    gas_const: float = GAS_CONSTANT
    burgers_mu_ratio: float = 1.0      # mu2/mu1
    burgers_eta_ratio: float = 50.0    # eta2/eta1 (steady over transient)
    andrade_alpha: float = 0.33
    andrade_beta: float = 1e-13        # Pa^-1 s^-alpha

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown rheology model {self.model!r}")
        if self.mu_elastic <= 0 or self.eta_ref <= 0 or self.t_melt <= 0:
            raise ValueError("mu_elastic, eta_ref and t_melt must be positive")
        if self.model == ANDRADE and not 0.3 <= self.andrade_alpha <= 0.38:
            raise ValueError(
                f"andrade_alpha must lie in [0.3, 0.38], got {self.andrade_alpha}"
            )
        if self.model == BURGERS and not 17.0 <= self.burgers_eta_ratio <= 2500.0:
            raise ValueError(
                f"burgers_eta_ratio must lie in [17, 2500], got {self.burgers_eta_ratio}"
            )


@dataclass(frozen=True)
class TidalResponse:
    """Complex rigidity and Love number evaluated at one (T, omega) point."""

    mu_complex: complex
    k2_complex: complex
    k2: float
    q_factor: float
    k2_over_q: float


def viscosity(T, params: RheologyParams):
    """Arrhenius-type Newtonian ice viscosity.

    eta(T) = eta_ref * exp[(E_a/(R_g*T_m)) * (T_m/T - 1)]; equals eta_ref
    at the reference temperature and grows steeply as T drops below it.
    """
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    tm = params.t_melt
    arg = params.e_activation / (params.gas_const * tm) * (tm / T - 1.0)
    return params.eta_ref * math.exp(arg)


def vrh_rigidity(x_s, mu_s, mu_i):
    """Voigt / Reuss / Hill rigidity of a two-phase mixture.

    x_s is the mass fraction of the stiff phase.  Returns the tuple
    (voigt, reuss, hill).
    """
    if not 0.0 <= x_s <= 1.0:
        raise ValueError(f"mass fraction must lie in [0, 1], got {x_s}")
    if mu_s <= 0 or mu_i <= 0:
        raise ValueError("component rigidities must be positive")
    voigt = x_s * mu_s + (1.0 - x_s) * mu_i
    reuss = 1.0 / (x_s / mu_s + (1.0 - x_s) / mu_i)
    return voigt, reuss, 0.5 * (voigt + reuss)


def rigidity_maxwell(omega, mu, eta):
    """Maxwell complex rigidity.

    mu~ = (mu eta^2 w^2 + i mu^2 eta w) / (mu^2 + eta^2 w^2).  The
    denominator uses mu^2 so that the elastic (w*tau >> 1) and fluid
    (w*tau << 1) limits come out right and Im/Re = 1/(w*tau_M) exactly.
    """
    _require_positive_omega(omega)
    den = mu**2 + (eta * omega) ** 2
    return complex(mu * (eta * omega) ** 2 / den, mu**2 * eta * omega / den)


def rigidity_burgers(omega, mu1, mu2, eta1, eta2):
    """Burgers complex rigidity with a transient (1) and steady (2) branch.

    C1 = 1/mu1 + eta1/(mu1 eta2) + 1/mu2
    C2 = 1/eta2 - (eta1/(mu1 mu2)) w^2
    mu~ = w^2 (C1 - eta1 C2/mu1) / (C2^2 + w^2 C1^2)
          + i w (C2 + eta1 w^2 C1/mu1) / (C2^2 + w^2 C1^2)

    The zero-frequency limit behaves as a fluid of viscosity eta2, so
    eta2 is the long-term (steady-state) viscosity.
    """
    _require_positive_omega(omega)
    if min(mu1, mu2, eta1, eta2) <= 0:
        raise ValueError("all Burgers parameters must be positive")
    c1 = 1.0 / mu1 + eta1 / (mu1 * eta2) + 1.0 / mu2
    c2 = 1.0 / eta2 - eta1 * omega**2 / (mu1 * mu2)
    den = c2**2 + (omega * c1) ** 2
    re = omega**2 * (c1 - eta1 * c2 / mu1) / den
    im = omega * (c2 + eta1 * omega**2 * c1 / mu1) / den
    return complex(re, im)


def rigidity_andrade(omega, mu, eta, alpha, beta):
    """Andrade complex rigidity.

    The model is stated as a complex compliance

        J~ = 1/mu + b w^-a cos(a pi/2) G(1+a)
             - i [ 1/(eta w) + b w^-a sin(a pi/2) G(1+a) ],

    whose inverse is the rigidity.  The anelastic creep term keeps the
    response dissipative even when the Maxwell channel 1/(eta w) is
    frozen out by a huge viscosity.
    """
    _require_positive_omega(omega)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if beta < 0 or mu <= 0 or eta <= 0:
        raise ValueError("mu, eta must be positive and beta nonnegative")
    creep = beta * omega ** (-alpha) * math.gamma(1.0 + alpha)
    re = 1.0 / mu + creep * math.cos(0.5 * math.pi * alpha)
    im = 1.0 / (eta * omega) + creep * math.sin(0.5 * math.pi * alpha)
    return 1.0 / complex(re, -im)


def love_number_k2(mu_tilde, rho, g, radius):
    """Degree-2 potential Love number of a homogeneous incompressible sphere.

    k2~ = (3/2) / (1 + 19 mu~ / (2 rho g R)), with mu~ complex.  rho in
    kg/m^3, g in m/s^2, radius in m.
    """
    if rho <= 0 or g <= 0 or radius <= 0:
        raise ValueError("rho, g and radius must be positive")
    return 1.5 / (1.0 + 19.0 * mu_tilde / (2.0 * rho * g * radius))


def complex_rigidity(omega, eta, params: RheologyParams):
    """Dispatch to the configured rheological model."""
    mu = params.mu_elastic
    if params.model == MAXWELL:
        return rigidity_maxwell(omega, mu, eta)
    if params.model == BURGERS:
        eta1 = eta / params.burgers_eta_ratio
        return rigidity_burgers(omega, mu, params.burgers_mu_ratio * mu, eta1, eta)
    return rigidity_andrade(omega, mu, eta, params.andrade_alpha, params.andrade_beta)


def tidal_response(t_mean, omega, body: BodyPhysical, params: RheologyParams):
    """Full chain T -> eta -> mu~ -> k2~ -> (k2, Q, k2/Q) for one body."""
    eta = viscosity(t_mean, params)
    mu_tilde = complex_rigidity(omega, eta, params)
    k2c = love_number_k2(mu_tilde, body.density, body.surface_gravity, body.radius_m)
    k2 = abs(k2c)
    im = abs(k2c.imag)
    q = k2 / im if im > 0.0 else math.inf
    return TidalResponse(
        mu_complex=mu_tilde,
        k2_complex=k2c,
        k2=k2,
        q_factor=q,
        k2_over_q=im,
    )


def q_versus_melting_temperature(t_mean, omega, body, params, t_melt_grid):
    """Q as a function of the reference (melting) temperature.

    Returns a list of (t_melt, Q) pairs for plotting model comparisons
    at a fixed interior temperature and forcing frequency.
    """
    out = []
    for tm in t_melt_grid:
        p = _replace_t_melt(params, tm)
        out.append((tm, tidal_response(t_mean, omega, body, p).q_factor))
    return out


def _replace_t_melt(params, tm):
    from dataclasses import replace

    return replace(params, t_melt=float(tm))


def _require_positive_omega(omega):
    if omega <= 0:
        raise ValueError(f"forcing frequency must be positive, got {omega}")


def maxwell_time(eta, mu):
    """tau_M = eta/mu in seconds."""
    return eta / mu

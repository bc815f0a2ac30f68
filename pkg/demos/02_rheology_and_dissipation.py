"""Tidal response of a cold icy body under three rheological models.

Shows the viscosity law, the complex rigidity and Love number chain,
and how the dissipation factor Q depends on the melting temperature
used as the viscosity reference point.
"""

import numpy as np

from orbitherm.bodies import miranda, uranus
from orbitherm.constants import DAY
from orbitherm.elements import mean_motion
from orbitherm import rheology as rh

body = miranda()
omega = mean_motion(129_900.0, uranus())
print(f"forcing frequency (mean motion): {omega:.4e} rad/s")
print(f"Maxwell time at eta=1e15, mu=4.5e9: "
      f"{rh.maxwell_time(1e15, 4.5e9)/DAY:.2f} days")

print("\n== viscosity law (reference 273 K) ==")
params = rh.RheologyParams()
for T in (84, 120, 160, 200, 240, 273):
    print(f"  T = {T:3d} K : eta = {rh.viscosity(T, params):.3e} Pa s")

print("\n== mixture rigidity (Voigt-Reuss-Hill) ==")
voigt, reuss, hill = rh.vrh_rigidity(0.37, 65e9, 4.5e9)
print(f"  Voigt {voigt/1e9:6.2f} GPa | Reuss {reuss/1e9:5.2f} GPa | "
      f"Hill {hill/1e9:6.2f} GPa")

print("\n== tidal response at T_mean = 86 K ==")
for model in (rh.MAXWELL, rh.BURGERS, rh.ANDRADE):
    resp = rh.tidal_response(86.0, omega, body, rh.RheologyParams(model=model))
    print(f"  {model:8s}: k2 = {resp.k2:.3e}  Q = {resp.q_factor:9.3e}  "
          f"k2/Q = {resp.k2_over_q:.3e}")

print("\n== Q versus melting temperature (T_mean = 84 K) ==")
tm_grid = np.linspace(160.0, 273.0, 8)
print("  T_melt   " + "  ".join(f"{tm:7.0f}" for tm in tm_grid))
for model in (rh.MAXWELL, rh.BURGERS, rh.ANDRADE):
    curve = rh.q_versus_melting_temperature(
        84.0, omega, body, rh.RheologyParams(model=model), tm_grid)
    print(f"  {model:8s} " + "  ".join(f"{q:7.1e}" for _, q in curve))

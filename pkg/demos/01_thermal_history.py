"""Interior conduction from formation to the present day.

Builds the calibrated radiogenic inventory, checks its two anchors,
and marches the conduction solver over 4.6 Gyr with and without the
short-lived isotopes to produce the warm/cold starting profiles.
"""

import numpy as np

from orbitherm.bodies import miranda
from orbitherm.constants import GYR, MYR
from orbitherm import thermal

body = miranda()
mix = thermal.miranda_mixture()
inv = thermal.calibrated_inventory()

print("== material properties of the ice/rock mixture ==")
print(f"  cp            = {mix.cp:7.1f} J/kg/K")
print(f"  k             = {mix.k_cond:7.2f} W/m/K")
print(f"  diffusivity   = {mix.alpha_diff:.3e} m^2/s")
tau = thermal.conduction_timescale(mix, body.radius_m) / MYR
print(f"  R^2/alpha     = {tau:7.1f} Myr  (conduction timescale)")

print("\n== radiogenic anchors ==")
q_now = thermal.radiogenic_power(4.56e9, inv, short_lived=False)
q_0 = thermal.radiogenic_power(0.0, inv, long_lived=False)
print(f"  today  : {q_now:.2e} W/kg of rock -> {q_now*0.37*body.mass:.2e} W total")
print(f"  at t=0 : {q_0:.2e} W/kg of rock (short-lived) "
      f"-> {q_0*0.37*body.mass:.2e} W total")
rate = thermal.adiabatic_heating_rate(q_now) * MYR
print(f"  stored-heating rate today ~ {rate:.3f} K/Myr")

print("\n== heating history (W/kg of rock) ==")
for t_gyr in (0.0, 0.001, 0.01, 0.1, 1.0, 2.0, 4.56):
    q = thermal.radiogenic_power(t_gyr * 1e9, inv)
    print(f"  t = {t_gyr:6.3f} Gyr : {q:.3e}")

print("\n== warm and cold profiles after 4.6 Gyr (120 radial points) ==")
warm, cold = thermal.initial_profiles(body.radius_m, mix, inv, n_points=120)
for tag, grid in (("warm", warm), ("cold", cold)):
    print(f"  {tag}: center {grid.temps[0]:7.2f} K, "
          f"mean {thermal.mean_temperature(grid):7.2f} K, "
          f"surface {grid.temps[-1]:5.1f} K")
sel = np.linspace(0, warm.n_points - 1, 9).astype(int)
print("  r/R:  " + "  ".join(f"{warm.radii[i]/warm.radius:5.2f}" for i in sel))
print("  warm: " + "  ".join(f"{warm.temps[i]:5.1f}" for i in sel))
print("  cold: " + "  ".join(f"{cold.temps[i]:5.1f}" for i in sel))

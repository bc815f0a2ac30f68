"""Quick look at tidal heating over the (eccentricity, Q) plane.

The estimator multiplies the elastic Love number, the orbit geometry,
and e^2/Q into a dissipated power and a 1-Myr temperature rise; it is
the fast screening tool for whether a scenario can heat the interior
at all.
"""

import numpy as np

from orbitherm.bodies import miranda, uranus
from orbitherm.elements import mean_motion, miranda_elements_j2000
from orbitherm.rheology import MAXWELL, RheologyParams, tidal_response
from orbitherm.tides import heating_estimate

planet, body = uranus(), miranda()
orbit = miranda_elements_j2000()
k2 = tidal_response(84.0, mean_motion(orbit.a, planet), body,
                    RheologyParams(model=MAXWELL)).k2
print(f"elastic k2 of the mixture body: {k2:.4e}\n")

q_values = (5.0, 20.0, 100.0, 500.0)
e_values = np.concatenate([np.linspace(0.0, 0.1, 6), [0.2, 0.3, 0.4, 0.5]])

print("power dissipated [W]")
print("   e\\Q   " + "  ".join(f"{q:9.0f}" for q in q_values))
for e in e_values:
    row = [heating_estimate(e, q, k2, planet, body, orbit)[0] for q in q_values]
    print(f"  {e:5.2f} " + "  ".join(f"{p:9.2e}" for p in row))

print("\ntemperature rise over 1 Myr [K]")
print("   e\\Q   " + "  ".join(f"{q:9.0f}" for q in q_values))
for e in e_values:
    row = [heating_estimate(e, q, k2, planet, body, orbit)[1] for q in q_values]
    print(f"  {e:5.2f} " + "  ".join(f"{dt:9.2e}" for dt in row))

print("\nA kelvin-scale rise inside a megayear needs e pushed toward ~0.4")
print("unless Q drops well below 100; small exit eccentricities stay cold.")

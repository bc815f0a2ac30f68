"""Text-art rendering of the resonance phase space.

Sweeps a small grid of (mean anomaly, semi-major axis) cells through
1500-year integrations of the averaged model and shades each cell by
the excursion of the inner satellite's semi-major axis.  The dark ring
is the separatrix; the quiet core inside it is the libration island.
"""

import time

import numpy as np

from orbitherm.cartography import AVERAGED, MapSpec, run_map, separatrix_centroid

spec = MapSpec(model=AVERAGED, n_a=18, n_m=18, span=1500.0)
t0 = time.perf_counter()
result = run_map(spec, workers=2)
print(f"{spec.n_a}x{spec.n_m} cells in {time.perf_counter()-t0:.0f} s")

delta = result.delta_a
lo, hi = np.nanmin(delta), np.nanmax(delta)
print(f"excursion range: {lo:.1f} .. {hi:.1f} km")
chars = " .:-=+*#%@"
for i in range(spec.n_a - 1, -1, -1):
    row = "".join(
        chars[min(int((v - lo) / (hi - lo) * 9.999), 9)] if np.isfinite(v) else "?"
        for v in delta[i]
    )
    print(f"  {result.a_values[i]:9.1f} km  {row}")
print(" " * 16 + "M5 from 0 to 360 deg ->")
print(f"\nseparatrix-ring centroid: a5 = {separatrix_centroid(result):.1f} km")

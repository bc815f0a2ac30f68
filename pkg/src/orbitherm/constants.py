"""Physical constants and unit conversions shared across the package.

Internal unit conventions:
  * dynamics:  km, s, rad  (gravitational parameters in km^3/s^2)
  * thermal:   m, kg, s, K, W  (SI)
Angles are radians everywhere except at I/O boundaries.
"""

import math

# CODATA 2018 gravitational constant
G_SI = 6.67430e-11          # m^3 kg^-1 s^-2
G_KM = G_SI * 1e-9          # km^3 kg^-1 s^-2

# Time
DAY = 86400.0               # s
YEAR = 365.25 * DAY         # Julian year, s
MYR = 1e6 * YEAR
GYR = 1e9 * YEAR

# Molar gas constant as used for the ice viscosity law
GAS_CONSTANT = 8.31         # J mol^-1 K^-1

DEG = math.pi / 180.0       # rad per degree

KM = 1e3                    # m per km


def wrap_angle(theta):
    """Reduce an angle (or array of angles) to [0, 2*pi)."""
    return theta % (2.0 * math.pi)

"""Physical constants used throughout the package.

All force and energy evaluators read ``HBAR`` and ``C_LIGHT`` from here and
nowhere else, so outputs are bit-reproducible across modules for a given
``CONSTANTS_VERSION``.
"""

import math

# CODATA-2018 exact / defined values
HBAR = 1.054_571_817e-34  # J s
C_LIGHT = 2.997_924_58e8  # m/s

HBAR_C = HBAR * C_LIGHT  # J m

PI = math.pi

CONSTANTS_VERSION = "codata2018"

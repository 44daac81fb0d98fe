"""Physical constants pinned for reproducible design numbers.

All frequencies in this package are angular (rad/s), times are seconds,
lengths are meters, temperatures are kelvin.
"""

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K

# Speed of light. The rounded value is deliberate: the fiber design figures
# this tool reproduces (transit time, spacing bound) are quoted for
# c = 3.0e8 m/s, and the acceptance tolerances are tighter than the 0.07%
# difference to the exact SI value.
C_LIGHT = 3.0e8  # m / s

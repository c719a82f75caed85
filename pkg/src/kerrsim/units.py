"""Simulation units.

Everything in the package is dimensionless with the quantization length and
the speed of light set to one, so the round-trip (quantization) time is one
and neighbouring modes are spaced by 2*pi in angular frequency.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SimUnits:
    L: float = 1.0
    c: float = 1.0

    @property
    def T(self) -> float:
        return self.L / self.c

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.c / self.L


UNITS = SimUnits()
L = UNITS.L
C = UNITS.c
T = UNITS.T
OMEGA = UNITS.omega

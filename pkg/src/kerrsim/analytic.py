"""Closed-form instantaneous-response gate.

In the broad-medium limit the interaction only rescales the pair sums
``v_mu``: every amplitude picks up ``(exp(-i Phi) - 1) v_mu(0) / M``. Projecting
back on the input gives the overlap ``1 + r (exp(-i Phi) - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import MediumConfig, TwoPhotonState, mu_index

SOURCES = ("analytic", "numeric", "nonlocal_toy")


def _wrap_phase(phi: float) -> float:
    """Map to (-pi, pi]."""
    phi = math.remainder(phi, 2 * math.pi) + 0.0  # drops the sign of -0.0
    return math.pi if phi <= -math.pi else phi


@dataclass(frozen=True)
class GateResult:
    overlap: complex
    fidelity_F0: float
    phase_phi: float
    Phi: float
    r: float
    source: str = "analytic"

    @classmethod
    def from_overlap(cls, overlap: complex, Phi: float, r: float, source: str) -> GateResult:
        overlap = complex(overlap)
        return cls(overlap, abs(overlap) ** 2, _wrap_phase(-np.angle(overlap)), float(Phi), float(r), source)


def fidelity_phase(Phi: float, r: float) -> GateResult:
    """Fidelity ``F0 = 1 - 4 sin^2(Phi/2) r (1 - r)`` and phase ``phi`` for given ``Phi`` and ``r``.

    The phase uses ``atan2(r sin Phi, 1 - r + r cos Phi)`` so it stays continuous
    when the denominator changes sign (possible only for ``r > 1/2``).
    """
    if not -1e-12 <= r <= 1.0 + 1e-12:
        raise ValueError(f"r must lie in [0, 1], got {r}")
    r = min(max(r, 0.0), 1.0)
    F0 = 1.0 - 4.0 * math.sin(Phi / 2) ** 2 * r * (1.0 - r)
    phi = _wrap_phase(math.atan2(r * math.sin(Phi), 1.0 - r + r * math.cos(Phi)))
    overlap = 1.0 + r * (complex(math.cos(Phi), -math.sin(Phi)) - 1.0)
    return GateResult(overlap, F0, phi, float(Phi), float(r), "analytic")


def analytic_final_state(state0: TwoPhotonState, medium: MediumConfig) -> TwoPhotonState:
    """State at t = 1 under the delta-kernel approximation.

    Not renormalized: the norm deviation measures the approximation error.
    """
    if state0.n_max != medium.n_max:
        raise ValueError(f"state has n_max={state0.n_max} but medium has n_max={medium.n_max}")
    v = state0.v_mu()
    shift = (np.exp(-1j * medium.Phi) - 1.0) / state0.M
    return TwoPhotonState(state0.n_max, state0.amplitudes + shift * v[mu_index(state0.n_max)])


def overlap_with(state: TwoPhotonState, reference: TwoPhotonState) -> complex:
    """``<reference|state>``; at t = 1 the factored-out free phases are all one."""
    if state.n_max != reference.n_max:
        raise ValueError("states live on different mode grids")
    return complex(np.vdot(reference.amplitudes, state.amplitudes))


def nonlocal_toy_gate(state0: TwoPhotonState, Phi_prime: float) -> TwoPhotonState:
    """Number-operator coupling ``l*eps*N_a*N_b``: a global phase on the one-photon-each sector."""
    return TwoPhotonState(state0.n_max, state0.amplitudes * np.exp(-1j * Phi_prime))


def heisenberg_phase_profile(pb_intensity, kappa_l: float, shift: float = 0.0) -> np.ndarray:
    """Local Heisenberg-picture phase ``kappa_l * I_b(z - shift)`` on a uniform periodic grid.

    ``shift`` is the propagation distance ``c t`` and is applied by rolling
    the samples, so it is rounded to the nearest grid point.
    """
    I = np.asarray(pb_intensity, dtype=float)
    if np.any(I < 0):
        raise ValueError("intensity must be non-negative")
    k = int(round(shift * I.size))
    return kappa_l * np.roll(I, k)

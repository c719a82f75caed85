"""Numerical Schrodinger-picture evolution under the local Kerr Hamiltonian.

The interaction-picture amplitudes obey

    dc[n,m]/dt = -i eta sum_{n',m'} c[n',m'] K(n'+m' - n-m, t),
    K(d, t) = int_{z0}^{z0+l} exp(-2 pi i d (t - z)) dz,

so the right-hand side only sees the pair sums ``v_mu = sum_{n+m=mu} c[n,m]``.
Both integrators below use fixed-step classical RK4 over one round trip.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .analytic import GateResult, overlap_with
from .errors import NumericalGuardError
from .state import MediumConfig, TwoPhotonState, mu_index, mu_values, pair_counts, phase_integral, sum_over_mu

log = logging.getLogger(__name__)

METHODS = ("full_matrix", "reduced_mu")
NORM_ABORT = 1e-6

__all__ = [
    "EvolutionConfig",
    "kernel",
    "kernel_matrix",
    "evolve",
    "overlap_with",
    "gate_result",
    "rk4",
]


@dataclass(frozen=True)
class EvolutionConfig:
    steps: int = 20000
    method: str = "full_matrix"

    def __post_init__(self):
        if self.steps < 1000:
            raise ValueError(f"steps must be >= 1000, got {self.steps}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")


def kernel(delta_mu: int, t: float, medium: MediumConfig) -> complex:
    """``int_{z0}^{z0+l} exp(-2 pi i delta_mu (t - z)) dz`` in closed form."""
    g = phase_integral(np.array([delta_mu]), medium.z0, medium.l)[0]
    return complex(np.exp(-2j * np.pi * delta_mu * t) * g)


def kernel_matrix(n_max: int, medium: MediumConfig) -> np.ndarray:
    """Time-independent part ``G[mu, mu'] = int exp(2 pi i (mu' - mu) z) dz``.

    The full kernel is ``D(t) G D(t)^*`` with ``D = diag(exp(2 pi i mu t))``.
    """
    mu = mu_values(n_max)
    return phase_integral(mu[None, :] - mu[:, None], medium.z0, medium.l)


def rk4(f, y0: np.ndarray, steps: int, t_end: float = 1.0) -> np.ndarray:
    """Classical fixed-step RK4 for ``y' = f(t, y)`` on ``[0, t_end]``."""
    h = t_end / steps
    y = np.array(y0, dtype=complex)
    for k in range(steps):
        t = k * h
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def _mu_drive(n_max: int, medium: MediumConfig):
    """Return ``g(t, v) = -i eta sum_mu' K(mu' - mu, t) v_mu'``."""
    G = -1j * medium.eta * kernel_matrix(n_max, medium)
    mu = mu_values(n_max)

    def drive(t, v):
        d = np.exp(2j * np.pi * mu * t)
        return d * (G @ (np.conj(d) * v))

    return drive


def evolve(state0: TwoPhotonState, medium: MediumConfig, cfg: EvolutionConfig = EvolutionConfig()) -> TwoPhotonState:
    """Integrate the two-photon amplitudes from t = 0 to the quantization time t = 1.

    ``full_matrix`` evolves every ``c[n, m]``; ``reduced_mu`` evolves ``v_mu``
    together with the common increment ``d_mu`` so that
    ``c[n, m](t) = c[n, m](0) + d_{n+m}(t)``. The two are algebraically identical.

    Raises ``NumericalGuardError`` if the norm drifts by more than 1e-6.
    """
    if state0.n_max != medium.n_max:
        raise ValueError(f"state has n_max={state0.n_max} but medium has n_max={medium.n_max}")
    n_max = state0.n_max
    drive = _mu_drive(n_max, medium)
    idx = mu_index(n_max)
    c0 = state0.amplitudes

    if cfg.method == "full_matrix":
        def f(t, c):
            return drive(t, sum_over_mu(c))[idx]

        with np.errstate(over="ignore", invalid="ignore"):
            c = rk4(f, c0, cfg.steps)
    else:
        counts = pair_counts(n_max)
        nmu = counts.size

        def f(t, y):
            g = drive(t, y[:nmu])
            return np.concatenate([counts * g, g])

        y0 = np.concatenate([state0.v_mu(), np.zeros(nmu, dtype=complex)])
        with np.errstate(over="ignore", invalid="ignore"):
            y = rk4(f, y0, cfg.steps)
        c = c0 + y[nmu:][idx]

    drift = abs(float(np.sqrt(np.sum(np.abs(c) ** 2))) - state0.norm())
    if not drift <= NORM_ABORT:
        raise NumericalGuardError(
            f"norm drift {drift:.3e} exceeds {NORM_ABORT:g} with {cfg.steps} RK4 steps "
            f"(dt={1 / cfg.steps:.2e}); increase steps"
        )
    out = TwoPhotonState(n_max, c)
    log.debug("evolve %s: Phi=%.4f steps=%d norm drift %.2e", cfg.method, medium.Phi, cfg.steps, drift)
    return out


def gate_result(state: TwoPhotonState, reference: TwoPhotonState, Phi: float, r: float, source: str = "numeric") -> GateResult:
    return GateResult.from_overlap(overlap_with(state, reference), Phi, r, source)

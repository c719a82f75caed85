"""Four-level giant-Kerr atom: single-photon absorption inside the EIT window.

One photon of field a (mode amplitudes ``c_n``) drives the 1-3 transition of
an atom at z = 0; a classical coupling field ``Omega_c`` links 3 and 2, and
level 3 decays at ``gamma31``. Field b is left out. The amplitude equations

    dc_n/dt = i g13 C3 exp(i n w t)
    dC3/dt  = -(gamma31/2) C3 + i g13 sum_n c_n exp(-i n w t) - i (Omega_c/2) C2
    dC2/dt  = -i (Omega_c/2) C3

are integrated with fixed-step RK4 alongside the accumulated loss
``int gamma31 |C3|^2 dt``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants as sc

from .errors import NumericalGuardError
from .modes import PulseSpectrum, spectral_report
from .units import OMEGA, T

STIFFNESS_LIMIT = 0.1
REGIME_FACTOR = 10.0


@dataclass(frozen=True)
class EitConfig:
    g13: float = 10.0
    Omega_c: float = math.sqrt(2e6)
    gamma31: float = 1000.0
    Gamma31: float = 1000.0
    steps: int = 20000

    def __post_init__(self):
        if self.gamma31 < 0 or self.Gamma31 < 0:
            raise ValueError("decay rates must be non-negative")
        if self.Gamma31 > self.gamma31:
            raise ValueError("Gamma31 cannot exceed the total coherence decay gamma31")
        if self.steps < 1:
            raise ValueError("steps must be positive")

    @property
    def dark_rate(self) -> float:
        """``Omega_c**2 / (2 gamma31)``, the relaxation rate of C2 after eliminating C3."""
        return math.inf if self.gamma31 == 0 else self.Omega_c**2 / (2 * self.gamma31)

    def regime_ok(self, delta_omega: float) -> bool:
        return self.gamma31 >= REGIME_FACTOR * delta_omega and self.dark_rate >= REGIME_FACTOR * delta_omega


@dataclass(frozen=True)
class EitResult:
    loss_numeric: float
    loss_adiabatic: float
    c3_max_sq: float
    survival: float
    regime_ok: bool
    c2_final_sq: float = 0.0
    c3_final_sq: float = 0.0
    times: np.ndarray = field(default=None, repr=False)
    c3_sq: np.ndarray = field(default=None, repr=False)
    amplitudes: np.ndarray = field(default=None, repr=False)

    @property
    def balance(self) -> float:
        """Should equal the initial norm (1) for the non-Hermitian model."""
        return self.survival + self.c2_final_sq + self.c3_final_sq + self.loss_numeric


@dataclass(frozen=True)
class MediumPhysical:
    rho_sigma_l: float
    sigma_a_over_A: float = 0.0
    N_atoms: float = 0.0

    def __post_init__(self):
        if min(self.rho_sigma_l, self.sigma_a_over_A, self.N_atoms) < 0:
            raise ValueError("medium parameters must be non-negative")


@dataclass(frozen=True)
class PhysicalConstants:
    epsilon0: float = sc.epsilon_0
    hbar: float = sc.hbar
    c: float = sc.c


def evolve_atom(p: PulseSpectrum, cfg: EitConfig) -> EitResult:
    """Integrate one photon past a single EIT atom over one round trip.

    Raises ``NumericalGuardError`` when ``dark_rate * dt`` exceeds 0.1.
    """
    h = T / cfg.steps
    if cfg.dark_rate * h > STIFFNESS_LIMIT:
        need = math.ceil(cfg.dark_rate * T / STIFFNESS_LIMIT)
        raise NumericalGuardError(
            f"stiff EIT system: Omega_c^2/(2 gamma31) * dt = {cfg.dark_rate * h:.3g} > {STIFFNESS_LIMIT}; "
            f"use at least {need} steps"
        )
    M = p.M
    nw = p.modes * OMEGA
    g, gam, half_om = cfg.g13, cfg.gamma31, 0.5 * cfg.Omega_c

    # y = [c_n..., C3, C2, accumulated loss]
    def f(t, y):
        ph = np.exp(1j * nw * t)
        c, c3, c2 = y[:M], y[M], y[M + 1]
        dy = np.empty_like(y)
        dy[:M] = 1j * g * c3 * ph
        dy[M] = -0.5 * gam * c3 + 1j * g * np.dot(c, np.conj(ph)) - 1j * half_om * c2
        dy[M + 1] = -1j * half_om * c3
        dy[M + 2] = gam * abs(c3) ** 2
        return dy

    y = np.zeros(M + 3, dtype=complex)
    y[:M] = p.amplitudes
    times = np.arange(cfg.steps + 1) * h
    c3_sq = np.empty(cfg.steps + 1)
    c3_sq[0] = 0.0
    for k in range(cfg.steps):
        t = times[k]
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        c3_sq[k + 1] = abs(y[M]) ** 2

    delta_omega = spectral_report(p).delta_omega_std
    return EitResult(
        loss_numeric=float(y[M + 2].real),
        loss_adiabatic=adiabatic_loss(p, cfg),
        c3_max_sq=float(c3_sq.max()),
        survival=float(np.sum(np.abs(y[:M]) ** 2)),
        regime_ok=cfg.regime_ok(delta_omega),
        c2_final_sq=float(abs(y[M + 1]) ** 2),
        c3_final_sq=float(abs(y[M]) ** 2),
        times=times,
        c3_sq=c3_sq,
        amplitudes=y[:M].copy(),
    )


def adiabatic_loss(p: PulseSpectrum, cfg: EitConfig) -> float:
    """Single-atom loss ``16 gamma31 g13^2 / Omega_c^4 * T * sum (n w)^2 |c_n|^2`` after adiabatic elimination."""
    var = float(np.sum((p.modes * OMEGA) ** 2 * np.abs(p.amplitudes) ** 2))
    return 16.0 * cfg.gamma31 * cfg.g13**2 / cfg.Omega_c**4 * T * var


def adiabatic_c3_profile(p: PulseSpectrum, cfg: EitConfig, t) -> np.ndarray:
    """Predicted ``|C3(t)|^2 = 16 g13^2 / Omega_c^4 * |sum n w c_n exp(-i n w t)|^2``.

    Proportional to the squared time derivative of the field envelope at the atom.
    """
    t = np.asarray(t, dtype=float)
    nw = p.modes * OMEGA
    deriv = np.exp(-1j * np.multiply.outer(t, nw)) @ (nw * p.amplitudes)
    return 16.0 * cfg.g13**2 / cfg.Omega_c**4 * np.abs(deriv) ** 2


def transparency_width(cfg: EitConfig, phys: MediumPhysical) -> float:
    """EIT window width ``Omega_c^2 / sqrt(Gamma31 gamma31) / sqrt(rho sigma_a l)``."""
    if phys.rho_sigma_l <= 0:
        raise ValueError("transparency width needs a positive optical depth")
    return cfg.Omega_c**2 / math.sqrt(cfg.Gamma31 * cfg.gamma31) / math.sqrt(phys.rho_sigma_l)


def total_loss_bound(delta_omega_pulse: float, delta_omega_trans: float) -> float:
    """Total absorption ``8 (delta_omega_pulse / delta_omega_trans)^2`` over the whole medium."""
    if delta_omega_pulse <= 0 or delta_omega_trans <= 0:
        raise ValueError("bandwidths must be positive")
    return 8.0 * (delta_omega_pulse / delta_omega_trans) ** 2


def giant_kerr_epsilon(d13_sq_d24_sq: float, Delta_b: float, Omega_c: float, rho_A: float) -> float:
    """Kerr coupling ``4 d13^2 d24^2 rho A / (Delta_b Omega_c^2)`` with hbar = 1.

    Valid for detunings well beyond the level-4 linewidth; the sign follows ``Delta_b``.
    """
    if Delta_b == 0:
        raise ValueError("giant Kerr coupling diverges at zero detuning")
    if Omega_c == 0:
        raise ValueError("coupling field Omega_c must be non-zero")
    return 4.0 * d13_sq_d24_sq * rho_A / (Delta_b * Omega_c**2)


def gamma31_from_dipole(omega0: float, d13: float, constants: PhysicalConstants = PhysicalConstants()) -> float:
    """Spontaneous decay rate ``omega0^3 d13^2 / (3 pi eps0 hbar c^3)``."""
    k = constants
    return omega0**3 * d13**2 / (3 * math.pi * k.epsilon0 * k.hbar * k.c**3)

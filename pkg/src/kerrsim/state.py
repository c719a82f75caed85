"""Shared containers: the two-photon amplitude matrix and the medium geometry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MediumConfig:
    """Localized Kerr medium occupying ``[z0, z0 + l]`` of the unit period.

    ``eta`` is the bare coupling with every field-normalization constant
    absorbed; the dimensionless interaction strength is ``Phi = eta * M * l``.
    """

    z0: float = 0.5
    l: float = 0.5
    eta: float = 0.0
    n_max: int = 8

    def __post_init__(self):
        if not 0.0 <= self.z0 < 1.0:
            raise ValueError(f"z0 must lie in [0, 1), got {self.z0}")
        if not 0.0 < self.l <= 1.0:
            raise ValueError(f"l must lie in (0, 1], got {self.l}")
        if self.z0 + self.l > 1.0 + 1e-12:
            raise ValueError("medium extends past the end of the period (z0 + l > 1)")
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")

    @property
    def M(self) -> int:
        return 2 * self.n_max + 1

    @property
    def Phi(self) -> float:
        return self.eta * self.M * self.l

    @classmethod
    def from_Phi(cls, Phi: float, *, z0: float = 0.5, l: float = 0.5, n_max: int = 8) -> MediumConfig:
        M = 2 * n_max + 1
        return cls(z0=z0, l=l, eta=Phi / (M * l), n_max=n_max)


@dataclass(frozen=True)
class TwoPhotonState:
    """Interaction-picture amplitudes ``c[n, m]`` for one photon in each field.

    Row ``i`` holds mode ``n = i - n_max`` of field a, column ``j`` mode
    ``m = j - n_max`` of field b. The free phases ``exp(-2*pi*i*(n+m)*t)`` are
    factored out, so at ``t = 1`` the matrix is directly comparable to ``t = 0``.
    """

    n_max: int
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.M, self.M):
            raise ValueError(f"amplitudes must have shape ({self.M}, {self.M}), got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def M(self) -> int:
        return 2 * self.n_max + 1

    @classmethod
    def product(cls, ca, cb=None) -> TwoPhotonState:
        """Product state from two single-photon spectra (arrays or PulseSpectrum)."""
        ca = np.asarray(getattr(ca, "amplitudes", ca), dtype=complex)
        cb = ca if cb is None else np.asarray(getattr(cb, "amplitudes", cb), dtype=complex)
        if ca.shape != cb.shape or ca.ndim != 1 or ca.size % 2 == 0:
            raise ValueError("spectra must be 1-D, odd length and on the same grid")
        return cls((ca.size - 1) // 2, np.outer(ca, cb))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def v_mu(self) -> np.ndarray:
        """Anti-diagonal sums ``v_mu = sum_{n+m=mu} c[n, m]`` for mu = -2n_max..2n_max."""
        return sum_over_mu(self.amplitudes)

    def c_numu(self, nu: int, mu: int) -> complex:
        """Amplitude addressed by difference ``nu = n - m`` and sum ``mu = n + m``."""
        if (nu - mu) % 2:
            raise ValueError(f"nu={nu} and mu={mu} have different parity")
        n, m = (mu + nu) // 2, (mu - nu) // 2
        if abs(n) > self.n_max or abs(m) > self.n_max:
            return 0j
        return complex(self.amplitudes[n + self.n_max, m + self.n_max])


def phase_integral(delta: np.ndarray, z0: float, l: float) -> np.ndarray:
    """``int_{z0}^{z0+l} exp(2 pi i delta z) dz`` for integer ``delta``."""
    delta = np.asarray(delta)
    out = np.empty(delta.shape, dtype=complex)
    zero = delta == 0
    out[zero] = l
    d = delta[~zero]
    out[~zero] = (np.exp(2j * np.pi * d * (z0 + l)) - np.exp(2j * np.pi * d * z0)) / (2j * np.pi * d)
    return out


def mu_values(n_max: int) -> np.ndarray:
    return np.arange(-2 * n_max, 2 * n_max + 1)


def pair_counts(n_max: int) -> np.ndarray:
    """Number of (n, m) pairs sharing each mu, i.e. ``2 n_max - |mu| + 1``."""
    return 2 * n_max - np.abs(mu_values(n_max)) + 1


def mu_index(n_max: int) -> np.ndarray:
    """Matrix of ``mu + 2 n_max`` for every (n, m) cell; used to scatter and gather."""
    M = 2 * n_max + 1
    idx = np.arange(M)
    return idx[:, None] + idx[None, :]


def sum_over_mu(c: np.ndarray) -> np.ndarray:
    M = c.shape[-1]
    n_max = (M - 1) // 2
    return np.bincount(mu_index(n_max).ravel(), weights=c.real.ravel(), minlength=2 * M - 1) + 1j * np.bincount(
        mu_index(n_max).ravel(), weights=c.imag.ravel(), minlength=2 * M - 1
    )

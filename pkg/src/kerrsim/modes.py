"""Single-photon pulse spectra and the spectral-overlap parameter ``r``.

A pulse is described by its mode amplitudes ``c_n`` (n = -n_max..n_max) on the
unit period. The field amplitude in space is ``psi(z) = sum_n c_n exp(2 pi i n z)``
and the intensity is ``|psi(z)|**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .state import MediumConfig, mu_values, phase_integral
from .units import OMEGA

SHAPES = ("gaussian", "sech", "square", "custom")

# Edge-mode population allowed before a pulse is declared not spectrally contained.
CONTAINMENT_THRESHOLD = 1e-3
# Relative |P(k)|^2 level that defines the effective spectral support.
SUPPORT_THRESHOLD = 1e-3
MIN_QUADRATURE_POINTS = 4096


@dataclass(frozen=True)
class PulseSpectrum:
    n_max: int
    amplitudes: np.ndarray
    shape_tag: str = "custom"
    sigma: Optional[float] = None
    z1: Optional[float] = None

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.M,):
            raise ValueError(f"expected {self.M} amplitudes for n_max={self.n_max}, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def M(self) -> int:
        return 2 * self.n_max + 1

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def field(self, z) -> np.ndarray:
        """Spatial amplitude ``psi(z)`` at t = 0."""
        z = np.asarray(z, dtype=float)
        return np.exp(2j * np.pi * np.multiply.outer(z, self.modes)) @ self.amplitudes

    def intensity(self, z) -> np.ndarray:
        return np.abs(self.field(z)) ** 2

    @classmethod
    def custom(cls, amplitudes) -> PulseSpectrum:
        a = np.asarray(amplitudes, dtype=complex)
        if a.ndim != 1 or a.size % 2 == 0:
            raise ValueError("custom spectra need an odd number of amplitudes")
        nrm = np.linalg.norm(a)
        if nrm == 0:
            raise ValueError("custom spectrum is identically zero")
        return cls((a.size - 1) // 2, a / nrm, "custom")


@dataclass(frozen=True)
class SpectralReport:
    r: float
    v_mu_sq_sum: float
    delta_omega_std: float
    delta_omega_support: float
    bound_ratio: float
    v_mu: np.ndarray = field(repr=False, default=None)


def _wrapped(z, z1):
    return (z - z1 + 0.5) % 1.0 - 0.5


def _envelope(shape: str, sigma: float, z1: float, z: np.ndarray) -> np.ndarray:
    """Amplitude envelope, i.e. the square root of the stated intensity profile."""
    x = _wrapped(z, z1)
    if shape == "gaussian":
        return np.exp(-(x**2) / (2 * sigma**2))
    if shape == "sech":
        return 1.0 / np.sqrt(np.cosh(np.minimum(np.abs(x) / sigma, 700.0)))
    if shape == "square":
        return (np.abs(x) < sigma / 2).astype(float)
    raise ValueError(f"unknown pulse shape {shape!r}")


def make_pulse(shape: str, sigma: float = 0.059, z1: float = 0.25, n_max: int = 8, amplitudes=None) -> PulseSpectrum:
    """Build a normalized single-photon spectrum from an intensity profile.

    For ``gaussian`` the intensity is ``exp(-(z - z1)**2 / sigma**2)``, for
    ``sech`` it is ``sech((z - z1) / sigma)`` and for ``square`` it is one on a
    window of width ``sigma``. The mode amplitudes are Fourier coefficients of
    the square-root envelope, computed by the trapezoid rule over one period.

    Raises ``ValueError`` when the edge modes carry more than
    ``CONTAINMENT_THRESHOLD`` of the peak mode population (the pulse is too
    narrow for ``n_max``).
    """
    if shape == "custom":
        if amplitudes is None:
            raise ValueError("custom shape requires explicit amplitudes")
        return PulseSpectrum.custom(amplitudes)
    if shape not in SHAPES:
        raise ValueError(f"unknown pulse shape {shape!r}; expected one of {SHAPES}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not 0.0 <= z1 < 1.0:
        raise ValueError(f"z1 must lie in [0, 1), got {z1}")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")

    M = 2 * n_max + 1
    Q = max(MIN_QUADRATURE_POINTS, 16 * M)
    z = np.arange(Q) / Q
    coeffs = np.fft.fft(_envelope(shape, sigma, z1, z)) / Q
    n = np.arange(-n_max, n_max + 1)
    c = coeffs[n % Q]

    pop = np.abs(c) ** 2
    edge = max(pop[0], pop[-1])
    if edge > CONTAINMENT_THRESHOLD * pop.max():
        raise ValueError(
            f"{shape} pulse with sigma={sigma} is not spectrally contained in {M} modes "
            f"(edge/peak population {edge / pop.max():.2e}); increase n_max or sigma"
        )
    c = c / np.sqrt(pop.sum())
    return PulseSpectrum(n_max, c, shape, float(sigma), float(z1))


def v_mu(p: PulseSpectrum) -> np.ndarray:
    """``v_mu = sum_{n+m=mu} c_n c_m`` for mu = -2n_max..2n_max (the autoconvolution)."""
    return np.convolve(p.amplitudes, p.amplitudes)


def intensity_fourier(p: PulseSpectrum) -> np.ndarray:
    """Fourier coefficients ``P_j`` of the intensity, j = -2n_max..2n_max."""
    c = p.amplitudes
    # P_j = sum_n c_n conj(c_{n-j})
    return np.convolve(c, np.conj(c[::-1]))


def spectral_report(p: PulseSpectrum) -> SpectralReport:
    v = v_mu(p)
    vsq = float(np.sum(np.abs(v) ** 2))
    r = vsq / p.M

    pop = np.abs(p.amplitudes) ** 2
    std = math.sqrt(float(np.sum((p.modes * OMEGA) ** 2 * pop)))

    P = intensity_fourier(p)
    Psq = np.abs(P) ** 2
    j = mu_values(p.n_max)
    inside = j[Psq >= SUPPORT_THRESHOLD * Psq[2 * p.n_max]]
    j_max = int(np.max(np.abs(inside)))
    # each retained discrete k stands for a bin of width OMEGA
    support = (2 * j_max + 1) * OMEGA
    medium = p.M * OMEGA
    return SpectralReport(r, vsq, std, support, support / medium, v)


def r_from_intensity(intensity, M: int) -> float:
    """``(1/M) * int I^2 / (int I)^2`` for ``intensity`` sampled uniformly on [0, 1).

    ``intensity`` is either an array of samples or a callable evaluated on
    ``MIN_QUADRATURE_POINTS`` points. The trapezoid rule on a periodic grid
    reduces to the sample mean.
    """
    if callable(intensity):
        z = np.arange(MIN_QUADRATURE_POINTS) / MIN_QUADRATURE_POINTS
        intensity = intensity(z)
    I = np.asarray(intensity, dtype=float)
    if I.ndim != 1 or I.size < 2:
        raise ValueError("intensity must be a 1-D array of samples")
    if np.any(I < 0):
        raise ValueError("intensity must be non-negative")
    first = I.mean()
    if first == 0:
        raise ValueError("intensity integrates to zero")
    return float(np.mean(I**2) / first**2 / M)


def r_closed_form(shape: str, sigma: float, M: int) -> float:
    """Infinite-line value of ``r`` for localized gaussian and sech pulses."""
    if shape == "gaussian":
        return 1.0 / (sigma * math.sqrt(2 * math.pi) * M)
    if shape == "sech":
        return 2.0 / (math.pi**2 * sigma * M)
    raise ValueError(f"no closed form for shape {shape!r}")


def minimal_mode_count(sigma: float, shape: str = "gaussian", z1: float = 0.5) -> int:
    """Smallest odd ``M >= 1/sigma`` whose grid also passes the containment check.

    A localized pulse of width sigma needs at least of order ``1/sigma`` modes.
    """
    M = math.ceil(1.0 / sigma - 1e-12)
    M = M if M % 2 else M + 1
    while True:
        try:
            make_pulse(shape, sigma, z1, (M - 1) // 2)
            return M
        except ValueError:
            M += 2


def interaction_energy(pa: PulseSpectrum, pb: PulseSpectrum, medium: MediumConfig) -> float:
    """``eta * int_medium I_a(z) I_b(z) dz``, evaluated exactly from the intensity Fourier series."""
    if pa.n_max != pb.n_max:
        raise ValueError("pulses live on different mode grids")
    conv = np.convolve(intensity_fourier(pa), intensity_fourier(pb))
    s = np.arange(-4 * pa.n_max, 4 * pa.n_max + 1)
    val = np.sum(conv * phase_integral(s, medium.z0, medium.l))
    return float(medium.eta * val.real)


def free_energy(pa: PulseSpectrum, pb: PulseSpectrum) -> float:
    """Free-field part of <H>: ``2 pi (sum n |c_n|^2 + sum m |c_m|^2)``; zero for symmetric spectra."""
    return float(OMEGA * (np.sum(pa.modes * np.abs(pa.amplitudes) ** 2) + np.sum(pb.modes * np.abs(pb.amplitudes) ** 2)))

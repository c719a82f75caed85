"""
Absorption inside the EIT window
================================

One photon meets a single four-level atom. Deep in the adiabatic regime the
level-3 population follows the squared time derivative of the field envelope,
and the integrated loss grows as the square of the pulse bandwidth.
"""

import numpy as np

from kerrsim.eit import EitConfig, MediumPhysical, adiabatic_c3_profile, evolve_atom, total_loss_bound, transparency_width
from kerrsim.experiments import loglog_slope
from kerrsim.modes import make_pulse, spectral_report

cfg = EitConfig()
print(f"gamma31={cfg.gamma31}, Omega_c^2/(2 gamma31)={cfg.dark_rate:.0f}, g13={cfg.g13}")

dws, losses = [], []
for sigma in np.geomspace(0.015, 0.15, 5):
    pulse = make_pulse("gaussian", sigma, 0.5, 40)
    res = evolve_atom(pulse, cfg)
    dw = spectral_report(pulse).delta_omega_std
    dws.append(dw)
    losses.append(res.loss_numeric)
    print(f"sigma={sigma:.4f} dw={dw:6.2f} loss={res.loss_numeric:.3e} adiabatic={res.loss_adiabatic:.3e} "
          f"balance-1={res.balance - 1:+.1e}")
print(f"log-log slope: {loglog_slope(dws, losses):.3f}")

# Time trace: numeric |C3|^2 against the adiabatic prediction around the pulse centre (t = 0.5).
pulse = make_pulse("gaussian", 0.05, 0.5, 40)
res = evolve_atom(pulse, cfg)
for t in (0.40, 0.45, 0.50, 0.55, 0.60):
    k = np.searchsorted(res.times, t)
    print(f"t={t:.2f}  numeric {res.c3_sq[k]:.3e}  adiabatic {adiabatic_c3_profile(pulse, cfg, res.times[k]):.3e}")

# Whole-medium loss for a given optical depth.
phys = MediumPhysical(rho_sigma_l=100.0)
width = transparency_width(cfg, phys)
print(f"\ntransparency width at optical depth 100: {width:.1f}; "
      f"total loss for this pulse: {total_loss_bound(spectral_report(pulse).delta_omega_std, width):.2e}")

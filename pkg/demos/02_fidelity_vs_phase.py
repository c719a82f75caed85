"""
Fidelity against phase: closed form and full integration
=========================================================

Sweep the bare interaction strength ``Phi`` and compare the Schrodinger-picture
fidelity and phase from the closed form with a direct RK4 integration of the
two-photon amplitudes (17 modes, medium in the second half of the period).
Set ``STEPS = 20000`` for publication-grade numbers; 4000 keeps this quick.
"""

import numpy as np

from kerrsim.analytic import fidelity_phase, nonlocal_toy_gate, overlap_with
from kerrsim.dynamics import EvolutionConfig, evolve, gate_result
from kerrsim.modes import make_pulse, spectral_report
from kerrsim.state import MediumConfig, TwoPhotonState

STEPS = 4000

for sigma in (0.078, 0.059):
    pulse = make_pulse("gaussian", sigma, 0.25, 8)
    r = spectral_report(pulse).r
    state0 = TwoPhotonState.product(pulse)
    print(f"\nsigma={sigma} (r={r:.3f})")
    print(" Phi    F0_num  F0_ana  phi_num phi_ana")
    for Phi in np.linspace(0, np.pi, 6):
        out = evolve(state0, MediumConfig.from_Phi(Phi), EvolutionConfig(STEPS))
        num = gate_result(out, state0, Phi, r)
        ana = fidelity_phase(Phi, r)
        print(f" {Phi:.3f}  {num.fidelity_F0:.4f}  {ana.fidelity_F0:.4f}  {num.phase_phi:.4f}  {ana.phase_phi:.4f}")

# The nonlocal number-operator coupling would give the full phase with unit
# fidelity; it is unphysical because it acts wherever the pulse happens to be.
toy = nonlocal_toy_gate(state0, np.pi)
print("\nnonlocal toy at Phi=pi: overlap", np.round(overlap_with(toy, state0), 12))

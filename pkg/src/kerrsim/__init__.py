"""Two single-photon wavepackets crossing a local Kerr medium.

Submodules: ``modes`` (pulse spectra, r), ``analytic`` (closed-form gate),
``dynamics`` (numerical RK4 evolution), ``eit`` (four-level absorption) and
``experiments``/``cli`` (reproducible sweeps to CSV).
"""

from .analytic import GateResult, analytic_final_state, fidelity_phase, heisenberg_phase_profile, nonlocal_toy_gate, overlap_with
from .dynamics import EvolutionConfig, evolve, gate_result, kernel
from .eit import (
    EitConfig,
    EitResult,
    MediumPhysical,
    PhysicalConstants,
    adiabatic_c3_profile,
    adiabatic_loss,
    evolve_atom,
    gamma31_from_dipole,
    giant_kerr_epsilon,
    total_loss_bound,
    transparency_width,
)
from .errors import NumericalGuardError
from .modes import PulseSpectrum, SpectralReport, interaction_energy, make_pulse, r_from_intensity, spectral_report
from .state import MediumConfig, TwoPhotonState
from .units import UNITS, SimUnits

__version__ = "0.1.0"

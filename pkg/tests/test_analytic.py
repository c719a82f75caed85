import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kerrsim.analytic import (
    GateResult,
    analytic_final_state,
    fidelity_phase,
    heisenberg_phase_profile,
    nonlocal_toy_gate,
    overlap_with,
)
from kerrsim.modes import PulseSpectrum, make_pulse, spectral_report
from kerrsim.state import MediumConfig, TwoPhotonState

angles = st.floats(-4 * math.pi, 4 * math.pi, allow_nan=False)
unit = st.floats(0.0, 1.0)


@pytest.fixture(scope="module")
def gaussian_pair():
    p = make_pulse("gaussian", 0.059, 0.25, 8)
    return p, TwoPhotonState.product(p)


def test_zero_coupling_is_identity(gaussian_pair):
    _, s0 = gaussian_pair
    out = analytic_final_state(s0, MediumConfig(eta=0.0))
    np.testing.assert_array_equal(out.amplitudes, s0.amplitudes)


def test_single_pair_picks_up_full_phase():
    s0 = TwoPhotonState(0, np.array([[1.0 + 0j]]))
    Phi = 1.234
    out = analytic_final_state(s0, MediumConfig.from_Phi(Phi, n_max=0))
    assert out.amplitudes[0, 0] == pytest.approx(np.exp(-1j * Phi), abs=1e-15)


def test_pi_overlap_for_r04_pulse():
    # width tuned so that r = 0.4 on 17 modes
    sigma = 1 / (0.4 * math.sqrt(2 * math.pi) * 17)
    p = make_pulse("gaussian", sigma, 0.25, 8)
    r = spectral_report(p).r
    s0 = TwoPhotonState.product(p)
    ov = overlap_with(analytic_final_state(s0, MediumConfig.from_Phi(math.pi)), s0)
    assert abs(ov) ** 2 == pytest.approx(1 - 4 * r * (1 - r), abs=1e-12)
    assert abs(ov) ** 2 == pytest.approx(0.04, abs=2e-3)


def test_matrix_route_matches_formula_for_products(gaussian_pair):
    p, s0 = gaussian_pair
    r = spectral_report(p).r
    for Phi in np.linspace(0, 2 * math.pi, 13):
        ov = overlap_with(analytic_final_state(s0, MediumConfig.from_Phi(Phi)), s0)
        res = fidelity_phase(Phi, r)
        assert ov == pytest.approx(res.overlap, abs=1e-12)
        assert abs(ov) ** 2 == pytest.approx(res.fidelity_F0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 6), st.integers(0, 2**32 - 1), angles)
def test_random_product_states_reproduce_formula(n_max, seed, Phi):
    rng = np.random.default_rng(seed)
    M = 2 * n_max + 1
    pa = PulseSpectrum.custom(rng.normal(size=M) + 1j * rng.normal(size=M))
    s0 = TwoPhotonState.product(pa)
    r = spectral_report(pa).r
    ov = overlap_with(analytic_final_state(s0, MediumConfig.from_Phi(Phi, n_max=n_max)), s0)
    assert ov == pytest.approx(fidelity_phase(Phi, r).overlap, abs=1e-12)


def test_half_r_special_case():
    for Phi in np.linspace(0, 3.0, 7):
        res = fidelity_phase(Phi, 0.5)
        assert res.phase_phi == pytest.approx(Phi / 2, abs=1e-12)
        assert res.fidelity_F0 == pytest.approx(math.cos(Phi / 2) ** 2, abs=1e-12)


def test_worked_example_point():
    res = fidelity_phase(0.657, 0.4)
    assert res.fidelity_F0 == pytest.approx(0.90, abs=0.005)
    assert res.phase_phi == pytest.approx(0.26, abs=0.005)


def test_r_zero_does_nothing():
    res = fidelity_phase(2.2, 0.0)
    assert res.fidelity_F0 == 1.0 and res.phase_phi == 0.0


def test_r_out_of_range():
    with pytest.raises(ValueError):
        fidelity_phase(1.0, 1.5)


@settings(max_examples=300, deadline=None)
@given(angles, unit)
def test_fidelity_identity(Phi, r):
    lhs = abs(1 + r * (np.exp(-1j * Phi) - 1)) ** 2
    assert lhs == pytest.approx(1 - 4 * math.sin(Phi / 2) ** 2 * r * (1 - r), abs=1e-12)
    res = fidelity_phase(Phi, r)
    assert res.fidelity_F0 == pytest.approx(abs(res.overlap) ** 2, abs=1e-12)
    if abs(res.overlap) > 1e-9:
        assert res.phase_phi == pytest.approx(-np.angle(res.overlap), abs=1e-9) or abs(abs(res.phase_phi) - math.pi) < 1e-9


def test_monotonicity_on_grid():
    rs = np.linspace(0, 0.5, 51)
    for Phi in np.linspace(0.1, math.pi - 0.1, 9):
        F = [fidelity_phase(Phi, r).fidelity_F0 for r in rs]
        phi = [fidelity_phase(Phi, r).phase_phi for r in rs]
        assert np.all(np.diff(F) < 0)
        assert np.all(np.diff(phi) > 0)


def test_gate_result_from_overlap_wraps_phase():
    res = GateResult.from_overlap(-1 + 0j, 0.0, 0.0, "numeric")
    assert res.phase_phi == pytest.approx(math.pi)
    assert -math.pi < res.phase_phi <= math.pi


def test_nonlocal_gate(gaussian_pair):
    _, s0 = gaussian_pair
    out = nonlocal_toy_gate(s0, math.pi)
    ov = overlap_with(out, s0)
    assert ov == pytest.approx(-1, abs=1e-12)
    res = GateResult.from_overlap(ov, math.pi, 1.0, "nonlocal_toy")
    assert res.fidelity_F0 == pytest.approx(1, abs=1e-12)
    assert res.phase_phi == pytest.approx(math.pi, abs=1e-12)
    assert out.norm() == pytest.approx(s0.norm(), abs=1e-15)
    np.testing.assert_array_equal(nonlocal_toy_gate(s0, 0.0).amplitudes, s0.amplitudes)


def test_nonlocal_gate_beats_local_one(gaussian_pair):
    p, s0 = gaussian_pair
    Phi = 2.0
    local = fidelity_phase(Phi, spectral_report(p).r)
    toy = GateResult.from_overlap(overlap_with(nonlocal_toy_gate(s0, Phi), s0), Phi, 1.0, "nonlocal_toy")
    assert toy.phase_phi == pytest.approx(Phi) and toy.fidelity_F0 == pytest.approx(1.0)
    assert local.phase_phi < toy.phase_phi and local.fidelity_F0 < toy.fidelity_F0


def test_parity_violation_rejected(gaussian_pair):
    _, s0 = gaussian_pair
    with pytest.raises(ValueError, match="parity"):
        s0.c_numu(1, 2)
    assert s0.c_numu(0, 0) == pytest.approx(s0.amplitudes[8, 8])
    assert s0.c_numu(0, 20) == 0


def test_heisenberg_profile():
    z = np.arange(1024) / 1024
    assert np.all(heisenberg_phase_profile(np.zeros(1024), 3.0) == 0)
    np.testing.assert_allclose(heisenberg_phase_profile(np.full(1024, 2.0), 0.5), 1.0)
    I = np.exp(-((z - 0.3) ** 2) / 0.05**2)
    prof = heisenberg_phase_profile(I, 1.7)
    np.testing.assert_allclose(prof, 1.7 * I)
    assert prof.max() == pytest.approx(1.7 * I.max())
    shifted = heisenberg_phase_profile(I, 1.7, shift=0.25)
    assert z[np.argmax(shifted)] == pytest.approx(0.55, abs=2e-3)

"""Exit criteria, one test per criterion. Each prints a PASS/FAIL line in the summary."""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from kerrsim.analytic import analytic_final_state, fidelity_phase
from kerrsim.dynamics import EvolutionConfig, evolve
from kerrsim.experiments import RunConfig, loglog_slope, run_eit_loss, run_fig1, run_worked_example
from kerrsim.modes import PulseSpectrum, interaction_energy, make_pulse, minimal_mode_count, spectral_report
from kerrsim.state import MediumConfig, TwoPhotonState
from kerrsim.eit import EitConfig, evolve_atom


def report(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"C{number:02d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, detail


def test_c01_spectral_parameter():
    t0 = time.perf_counter()
    r4 = spectral_report(make_pulse("gaussian", 0.059, 0.25, 8)).r
    r3 = spectral_report(make_pulse("gaussian", 0.078, 0.25, 8)).r
    dt = time.perf_counter() - t0
    ok = abs(r4 - 0.40) <= 0.01 and abs(r3 - 0.30) <= 0.01 and dt < 1.0
    report(1, "r for sigma=0.059/0.078, M=17", ok, f"r={r4:.4f}, {r3:.4f} in {dt:.3f}s")


def test_c02_analytic_curves():
    worst = 0.0
    for r in (0.2, 0.3, 0.4):
        for Phi in np.linspace(0, 2 * math.pi, 721):
            res = fidelity_phase(Phi, r)
            F = 1 - 4 * math.sin(Phi / 2) ** 2 * r * (1 - r)
            phi = math.atan(r * math.sin(Phi) / (1 - r + r * math.cos(Phi)))
            worst = max(worst, abs(res.fidelity_F0 - F), abs(res.phase_phi - phi))
    end = fidelity_phase(math.pi, 0.4).fidelity_F0
    ok = worst <= 1e-12 and abs(end - 0.04) <= 1e-12
    report(2, "analytic F0/phi identities", ok, f"max residual {worst:.1e}, F0(pi, 0.4)={end:.15f}")


@pytest.fixture(scope="module")
def fig1_numeric():
    cfg = RunConfig.build("fig1")
    t0 = time.perf_counter()
    _, rows = run_fig1(cfg)
    return [row for row in rows if row[4] is not None], time.perf_counter() - t0, cfg


def test_c03_fig1_numeric_dots(fig1_numeric):
    rows, elapsed, cfg = fig1_numeric
    assert cfg.steps == 20000 and len(rows) <= 20
    dev, lag = {}, {}
    for Phi, r, _, _, F_num, phi_num, _ in rows:
        # dots are compared with the analytic curve of their nominal family (0.3 or 0.4)
        curve = fidelity_phase(Phi, round(r, 1))
        key = round(r, 1)
        dev[key] = max(dev.get(key, 0.0), abs(F_num - curve.fidelity_F0))
        lag[key] = min(lag.get(key, math.inf), phi_num - curve.phase_phi)
    ok = dev[0.3] <= 0.05 and dev[0.3] < dev[0.4] and min(lag.values()) >= -0.05 and elapsed < 300
    report(3, "numeric dots vs analytic curves", ok,
           f"max|dF0| r0.3={dev[0.3]:.4f} r0.4={dev[0.4]:.4f}, min(phi_num-phi_an)={min(lag.values()):.4f}, "
           f"{len(rows)} points in {elapsed:.0f}s")


def test_c04_worked_example():
    t0 = time.perf_counter()
    rep = run_worked_example()
    dt = time.perf_counter() - t0
    ok = (abs(rep["Phi"] - 0.657) <= 0.01 and abs(rep["phi"] - 0.260) <= 0.005
          and abs(rep["P_loss"] - 0.102) <= 0.002 and abs(rep["P_loss_gaussian_formula"] - 0.102) <= 0.002
          and abs(rep["do_nothing_overlap"] - 0.983) <= 0.002 and dt < 1.0)
    report(4, "worked example chain", ok,
           f"r={rep['r']:.4f} P_loss={rep['P_loss']:.4f} Phi={rep['Phi']:.4f} phi={rep['phi']:.4f} "
           f"cos^2={rep['do_nothing_overlap']:.4f} in {dt:.3f}s")


def test_c05_unitarity():
    rng = np.random.default_rng(20240601)
    worst, worst_ratio = 0.0, math.inf
    for _ in range(10):
        n_max = int(rng.choice([4, 6, 8]))
        sigma = rng.uniform(1.0, 1.6) * 0.42 / n_max
        p = make_pulse("gaussian", sigma, rng.uniform(0, 1), n_max)
        s0 = TwoPhotonState.product(p)
        # Phi in [pi, 4 pi] keeps the coarse-step error above the rounding floor
        medium = MediumConfig.from_Phi(rng.uniform(math.pi, 4 * math.pi), z0=0.5, l=0.5, n_max=n_max)
        worst = max(worst, abs(evolve(s0, medium).norm() - 1))
        e1 = abs(evolve(s0, medium, EvolutionConfig(1000)).norm() - 1)
        e2 = abs(evolve(s0, medium, EvolutionConfig(2000)).norm() - 1)
        worst_ratio = min(worst_ratio, e1 / e2)
    ok = worst <= 1e-8 and worst_ratio >= 8
    report(5, "unitarity and RK4 order", ok, f"max norm error {worst:.1e} at 20000 steps, min error ratio (1000->2000 steps) {worst_ratio:.1f}")


def test_c06_representation_equivalence():
    worst = 0.0
    for n_max in (2, 4, 8):
        p = make_pulse("gaussian", 0.07 if n_max == 8 else 0.5 / n_max, 0.25, n_max)
        s0 = TwoPhotonState.product(p)
        medium = MediumConfig.from_Phi(2.5, n_max=n_max)
        a = evolve(s0, medium, EvolutionConfig(method="full_matrix"))
        b = evolve(s0, medium, EvolutionConfig(method="reduced_mu"))
        worst = max(worst, float(np.abs(a.amplitudes - b.amplitudes).max()))
    report(6, "full-matrix vs reduced-mu, M in {5, 9, 17}", worst <= 1e-6, f"max |dc| {worst:.1e}")


def test_c07_single_mode_oracle():
    s0 = TwoPhotonState(0, np.array([[1.0 + 0j]]))
    medium = MediumConfig(z0=0.5, l=0.5, eta=1.9, n_max=0)
    out = evolve(s0, medium).amplitudes[0, 0]
    e_phase = abs(out - np.exp(-1j * medium.eta * medium.l))
    e_ana = abs(out - analytic_final_state(s0, medium).amplitudes[0, 0])
    report(7, "M=1 phase oracle", max(e_phase, e_ana) <= 1e-10, f"|c - exp(-i eta l)|={e_phase:.1e}, vs analytic {e_ana:.1e}")


def test_c08_locality():
    worst = 0.0
    cases = [(0.03, 0.25, 0.5, 0.5), (0.03, 0.1, 0.3, 0.6), (0.025, 0.6, 0.0, 0.45)]
    for sigma, z1, z0, l in cases:
        p = make_pulse("gaussian", sigma, z1, 40)
        z = np.linspace(z0, z0 + l, 4001)
        assert p.intensity(z).max() < 1e-12 * p.intensity(np.array([z1]))[0] * 1e3
        worst = max(worst, abs(interaction_energy(p, p, MediumConfig(z0=z0, l=l, eta=1.0, n_max=40))))
    report(8, "interaction energy outside medium", worst <= 1e-10, f"max |E_int| {worst:.1e}")


@pytest.fixture(scope="module")
def eit_sweep():
    cfg = RunConfig.build("eit_loss")
    t0 = time.perf_counter()
    _, rows = run_eit_loss(cfg)
    elapsed = time.perf_counter() - t0
    # norm balance needs the full result; rerun the ends of the decade for it
    balances = [evolve_atom(cfg.pulse(s), cfg.eit_config()).balance for s in (cfg.sigma_min, cfg.sigma_max)]
    return rows, elapsed, balances


def test_c09_eit_norm_bookkeeping(eit_sweep):
    _, _, balances = eit_sweep
    worst = max(abs(b - 1) for b in balances)
    report(9, "EIT survival + |C2|^2 + |C3|^2 + loss = 1", worst <= 1e-6, f"max deviation {worst:.1e}")


def test_c10_eit_agreement_and_scaling(eit_sweep):
    rows, elapsed, _ = eit_sweep
    ratios = [row[4] for row in rows if row[5]]
    dw = [row[1] for row in rows]
    slope = loglog_slope(dw, [row[2] for row in rows])
    decade = max(dw) / min(dw)
    ok = (len(ratios) == len(rows) and all(0.8 <= q <= 1.25 for q in ratios)
          and abs(slope - 2) <= 0.1 and decade >= 9.99 and elapsed < 120)
    report(10, "EIT adiabatic agreement and bandwidth scaling", ok,
           f"ratios {min(ratios):.3f}..{max(ratios):.3f}, slope {slope:.3f} over x{decade:.1f} in {elapsed:.0f}s")


def test_c11_bound_property():
    rng = np.random.default_rng(7)
    violations = 0
    for _ in range(1000):
        M = 2 * int(rng.integers(0, 12)) + 1
        p = PulseSpectrum.custom(rng.normal(size=M) + 1j * rng.normal(size=M))
        # M = 1 gives r = 1 exactly, up to rounding
        violations += spectral_report(p).r > 1.0 + 1e-12
    worst = {}
    for shape, cap, grid in (("gaussian", 0.4, np.linspace(0.03, 0.25, 45)), ("sech", 0.2, np.linspace(0.02, 0.12, 41))):
        rs = []
        for sigma in grid:
            M = minimal_mode_count(sigma, shape)
            rs.append(spectral_report(make_pulse(shape, sigma, 0.5, (M - 1) // 2)).r)
        worst[shape] = (max(rs), cap)
    ok = violations == 0 and all(r <= cap + 0.01 for r, cap in worst.values())
    report(11, "r <= 1 and family caps", ok,
           f"{violations} violations in 1000 spectra; gaussian max r {worst['gaussian'][0]:.4f}, sech max r {worst['sech'][0]:.4f}")

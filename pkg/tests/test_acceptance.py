"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines as they execute.
"""

import time

import numpy as np
import pytest

from nessprobe import (
    SqueezedBath,
    SystemParams,
    ThermalBathPair,
    build_generators,
    build_observable_generator,
    build_squeezed_observable_generator,
    closed_form_steady_state,
    coeffs_squeezed,
    coeffs_thermal,
    eta_from_phi,
    eta_null_residual,
    evolve_observables,
    exact_response,
    exact_response_squeezed,
    infer_phi_from_probe,
    moment_flow_residual,
    perturbed_value,
    response_combined,
    response_coupling,
    response_occupation,
    response_squeezed,
    solve_lyapunov,
    steady_state_squeezed,
)
from nessprobe.cli import reproduce_figure
from nessprobe.cli import read_curve_csv
from nessprobe.heisenberg import IDX_N1, IDX_N2
from nessprobe.response import response_combined_asymptote

FIG_PARAMS = SystemParams(delta=10.0, lam=5.0, gamma=0.5)
FIG_BATHS = ThermalBathPair.from_inverse_temperatures(0.1, 0.001, FIG_PARAMS)
FIG_BATH_SQ = SqueezedBath.from_inverse_temperature(0.1, r=1.0, theta=0.0)
EPS = 0.1
PHI = 0.1
T_MAX = 40.0 / FIG_PARAMS.gamma


def _report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_steady_state_oracle_equivalence():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(120):
        p = SystemParams(
            delta=rng.uniform(0.0, 20.0),
            lam=rng.uniform(0.0, 20.0),
            gamma=rng.uniform(0.001, 2.0),
        )
        b = ThermalBathPair(rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0))
        numeric = solve_lyapunov(build_generators(p, b)).matrix
        closed = closed_form_steady_state(p, b).matrix
        worst = max(worst, float(np.max(np.abs(numeric - closed))))
    elapsed = time.perf_counter() - start
    _report(1, worst <= 1e-10 and elapsed < 5.0, f"max gap {worst:.2e}, {elapsed:.2f}s/120 draws")


def test_criterion_2_heisenberg_oracle_equivalence():
    rng = np.random.default_rng(4096)
    start = time.perf_counter()
    worst_thermal = 0.0
    worst_squeezed = 0.0
    for _ in range(100):
        p = SystemParams(
            delta=rng.uniform(0.0, 20.0),
            lam=rng.uniform(0.0, 20.0),
            gamma=rng.uniform(0.01, 2.0),
        )
        b = ThermalBathPair(rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0))
        occ = rng.uniform(0.0, 30.0)
        sq = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
        gen_t = build_observable_generator(p, b)
        gen_s = build_squeezed_observable_generator(p, occ, sq)
        for t in rng.uniform(0.0, 15.0, size=20):
            out = evolve_observables(gen_t, t, observable=IDX_N1)
            ref = coeffs_thermal(p, b, t)
            worst_thermal = max(
                worst_thermal,
                abs(out.coefficients[0] - ref.f),
                abs(out.coefficients[3] - ref.j),
                abs(out.coefficients[7] - ref.p),
                abs(out.coefficients[8] - ref.q),
                abs(out.constant - ref.s),
            )
            out = evolve_observables(gen_s, t, observable=IDX_N2)
            ref = coeffs_squeezed(p, t, occupation=occ)
            worst_squeezed = max(
                worst_squeezed,
                abs(out.coefficients[0] - ref.f),
                abs(out.coefficients[8] - ref.g),
                abs(out.coefficients[3] - ref.j),
                abs(out.constant - ref.l),
            )
    elapsed = time.perf_counter() - start
    ok = worst_thermal <= 1e-8 and worst_squeezed <= 1e-8 and elapsed < 30.0
    _report(
        2,
        ok,
        f"thermal gap {worst_thermal:.2e}, squeezed gap {worst_squeezed:.2e}, "
        f"{elapsed:.1f}s/100x20",
    )


def test_criterion_3_linear_equals_exact_dissipative():
    taus = np.linspace(0.0, T_MAX, 400)
    lin3 = response_occupation(FIG_PARAMS, FIG_BATHS, PHI, taus, 1)
    ex3 = exact_response(FIG_PARAMS, FIG_BATHS, PHI, taus, "A1")
    gap3 = float(np.max(np.abs(lin3 - ex3)))
    lin7 = response_squeezed(FIG_PARAMS, FIG_BATH_SQ, PHI, taus)
    ex7 = exact_response_squeezed(FIG_PARAMS, FIG_BATH_SQ, PHI, taus)
    gap7 = float(np.max(np.abs(lin7 - ex7)))
    _report(3, gap3 <= 1e-10 and gap7 <= 1e-10, f"fig3 gap {gap3:.2e}, fig7 gap {gap7:.2e}")


def test_criterion_4_asymptotic_convergence():
    # temperature-only cases relax at rate gamma: converged at t_max = 40/gamma
    gap_fig3 = abs(
        float(response_occupation(FIG_PARAMS, FIG_BATHS, PHI, T_MAX, 1))
        - perturbed_value(FIG_PARAMS, FIG_BATHS, 0.0, PHI, "A1")
    )
    gap_fig4 = abs(
        float(response_occupation(FIG_PARAMS, FIG_BATHS, PHI, T_MAX, 2))
        - perturbed_value(FIG_PARAMS, FIG_BATHS, 0.0, PHI, "A2")
    )
    # combined case: bounded by the first-order (eps^2) discrepancy of the asymptotes
    pv = perturbed_value(FIG_PARAMS, FIG_BATHS, EPS, PHI, "A1")
    first_order_gap = abs(pv - response_combined_asymptote(FIG_PARAMS, FIG_BATHS, EPS, PHI))
    gap_fig2 = abs(float(response_combined(FIG_PARAMS, FIG_BATHS, EPS, PHI, T_MAX)) - pv)
    ratios = []
    gaps = []
    for k in range(3):
        scale = 0.1 / 2**k
        gaps.append(
            abs(
                perturbed_value(FIG_PARAMS, FIG_BATHS, scale, scale, "A1")
                - response_combined_asymptote(FIG_PARAMS, FIG_BATHS, scale, scale)
            )
        )
    ratios = [a / b for a, b in zip(gaps, gaps[1:])]
    ok = (
        gap_fig3 <= 1e-6
        and gap_fig4 <= 1e-6
        and gap_fig2 <= first_order_gap + 1e-6
        and all(abs(r - 4.0) < 0.2 for r in ratios)
    )
    _report(
        4,
        ok,
        f"fig3 {gap_fig3:.1e}, fig4 {gap_fig4:.1e}, fig2 {gap_fig2:.1e} <= {first_order_gap:.1e}, "
        f"dyadic ratios {[round(r, 3) for r in ratios]}",
    )


def test_criterion_5_equilibrium_closed_form():
    p = FIG_PARAMS.replace(lam=0.0)
    taus = np.linspace(0.0, T_MAX, 400)
    expected = 0.1 * PHI * (1.0 - np.exp(-p.gamma * taus))
    gap = float(np.max(np.abs(response_occupation(p, FIG_BATHS, PHI, taus, 1) - expected)))
    asym = perturbed_value(p, FIG_BATHS, 0.0, PHI, "A1")
    ok = gap <= 1e-10 and abs(asym - 0.01) < 1e-12
    _report(5, ok, f"curve gap {gap:.2e}, asymptote {asym:.12f}")


def test_criterion_6_equipartition_limit():
    strong = FIG_PARAMS.replace(lam=1000.0)
    pv1 = perturbed_value(strong, FIG_BATHS, 0.0, PHI, "A1")
    pv2 = perturbed_value(strong, FIG_BATHS, 0.0, PHI, "A2")
    b1, b2 = FIG_BATHS.beta1_omega1, FIG_BATHS.beta2_omega2
    dev1 = abs(pv1 - b1 * PHI / 2) / (b1 * PHI / 2)
    dev2 = abs(pv2 - b2 * PHI / 2) / (b2 * PHI / 2)
    recovered = infer_phi_from_probe(pv1, pv2, b1, b2)
    dev_phi = abs(recovered - PHI) / PHI
    ok = dev1 < 1e-3 and dev2 < 1e-3 and dev_phi < 1e-3
    _report(6, ok, f"osc1 dev {dev1:.2e}, osc2 dev {dev2:.2e}, phi recovery dev {dev_phi:.2e}")


def test_criterion_7_squeezed_stationarity():
    rng = np.random.default_rng(777)
    worst = 0.0
    for _ in range(100):
        p = SystemParams(
            delta=rng.uniform(0.0, 20.0),
            lam=rng.uniform(0.0, 20.0),
            gamma=rng.uniform(0.1, 2.0),
        )
        bath = SqueezedBath(
            n=rng.uniform(0.0, 10.0), r=rng.uniform(0.0, 2.0), theta=rng.uniform(0.0, 2 * np.pi)
        )
        state = steady_state_squeezed(p, bath)
        worst = max(worst, moment_flow_residual(p, bath, state))
    decoupled = steady_state_squeezed(FIG_PARAMS.replace(lam=0.0), SqueezedBath(n=1.0, r=1.0, theta=0.3))
    thermal = steady_state_squeezed(FIG_PARAMS, SqueezedBath(n=1.0, r=0.0))
    ok = (
        worst <= 1e-9
        and decoupled.e_coef == 0.0
        and decoupled.f_coef == 0.0
        and thermal.d_coef == 0.0
    )
    _report(7, ok, f"max flow residual {worst:.2e} over 100 draws; limit coefficients exact zeros")


def test_criterion_8_eta_null_property():
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(20):
        p = SystemParams(
            delta=rng.uniform(0.0, 15.0), lam=rng.uniform(0.1, 10.0), gamma=rng.uniform(0.1, 2.0)
        )
        bath = SqueezedBath(
            n=rng.uniform(0.0, 5.0), r=rng.uniform(0.0, 2.0), theta=rng.uniform(0.0, 2 * np.pi)
        )
        eta = eta_from_phi(rng.uniform(0.01, 0.5), bath.r, bath.theta)
        worst = max(worst, eta_null_residual(p, bath, eta, rng.uniform(0.1, 10.0)))
    _report(8, worst <= 1e-12, f"max |Tr[A2(t) L_eta rho0]| = {worst:.2e} over 20 draws")


def test_criterion_9_conservation_and_recurrences():
    taus = np.linspace(0.0, 30.0, 500)
    c = coeffs_thermal(FIG_PARAMS, FIG_BATHS, taus)
    decay_gap = float(np.max(np.abs(c.f + c.j - np.exp(-FIG_PARAMS.gamma * taus))))
    unitary = FIG_PARAMS.replace(gamma=0.0)
    period = 2.0 * np.pi / unitary.z
    grid = np.linspace(0.0, 2.0 * period, 301)
    base = response_coupling(unitary, FIG_BATHS, EPS, grid)
    shifted = response_coupling(unitary, FIG_BATHS, EPS, grid + period)
    recurrence_gap = float(np.max(np.abs(base - shifted)))
    ok = decay_gap <= 1e-10 and recurrence_gap <= 1e-8
    _report(9, ok, f"f+j decay identity {decay_gap:.2e}, two-period recurrence {recurrence_gap:.2e}")


def test_criterion_10_figure_reproduction(tmp_path):
    start = time.perf_counter()
    first = {}
    for fig in ("fig2", "fig3", "fig4", "fig5", "fig7"):
        first[fig] = reproduce_figure(fig, tmp_path / "a")
    elapsed = time.perf_counter() - start
    # determinism: a second run must be byte-identical
    for fig in first:
        again = reproduce_figure(fig, tmp_path / "b")
        for fa, fb in zip(first[fig], again):
            assert fa.read_bytes() == fb.read_bytes(), f"{fa.name} not deterministic"

    problems = []

    fig3 = read_curve_csv(tmp_path / "a" / "fig3_steady_state.csv")
    if np.max(np.abs(fig3["linear"] - fig3["exact"])) > 1e-10:
        problems.append("fig3 linear != exact")
    if abs(fig3["linear"][-1] - fig3["asymptote"][-1]) > 1e-6:
        problems.append("fig3 not converged")

    eq3 = read_curve_csv(tmp_path / "a" / "fig3_equilibrium.csv")
    expected = 0.1 * PHI * (1.0 - np.exp(-FIG_PARAMS.gamma * eq3["t"]))
    if np.max(np.abs(eq3["linear"] - expected)) > 1e-10:
        problems.append("fig3 equilibrium curve mismatch")
    if abs(eq3["asymptote"][0] - 0.01) > 1e-12:
        problems.append("fig3 equilibrium asymptote")

    fig4 = read_curve_csv(tmp_path / "a" / "fig4_steady_state.csv")
    if abs(fig4["linear"][-1] - fig4["asymptote"][-1]) > 1e-6:
        problems.append("fig4 not converged")
    eq4 = read_curve_csv(tmp_path / "a" / "fig4_equilibrium.csv")
    if np.max(np.abs(eq4["linear"])) != 0.0:
        problems.append("fig4 equilibrium response not identically zero")

    fig2 = read_curve_csv(tmp_path / "a" / "fig2_steady_state.csv")
    pv = perturbed_value(FIG_PARAMS, FIG_BATHS, EPS, PHI, "A1")
    bound = abs(pv - response_combined_asymptote(FIG_PARAMS, FIG_BATHS, EPS, PHI)) + 1e-6
    if abs(fig2["linear"][-1] - fig2["asymptote"][-1]) > bound:
        problems.append("fig2 beyond first-order bound")

    b1, b2 = FIG_BATHS.beta1_omega1, FIG_BATHS.beta2_omega2
    inf_a = read_curve_csv(tmp_path / "a" / "fig5a_infinite_coupling.csv")
    inf_b = read_curve_csv(tmp_path / "a" / "fig5b_infinite_coupling.csv")
    if abs(inf_a["asymptote"][0] - b1 * PHI / 2) / (b1 * PHI / 2) > 1e-3:
        problems.append("fig5a equipartition")
    if abs(inf_b["asymptote"][0] - b2 * PHI / 2) / (b2 * PHI / 2) > 1e-3:
        problems.append("fig5b equipartition")
    rec = infer_phi_from_probe(inf_a["asymptote"][0], inf_b["asymptote"][0], b1, b2)
    if abs(rec - PHI) / PHI > 1e-3:
        problems.append("fig5 phi recovery")

    fig7 = read_curve_csv(tmp_path / "a" / "fig7_steady_state.csv")
    if np.max(np.abs(fig7["linear"] - fig7["exact"])) > 1e-10:
        problems.append("fig7 linear != exact")
    if abs(fig7["asymptote"][0] - PHI) > 1e-9:
        problems.append("fig7 perturbed value")

    ok = not problems and elapsed < 10.0
    _report(10, ok, f"{elapsed:.2f}s for 5 figures; " + ("; ".join(problems) if problems else "all curve checks hold"))

"""
Numbered acceptance criteria. Each test prints one ``PASS``/``FAIL`` line,
visible without ``-s``:

    pytest tests/test_acceptance.py
"""
import math
import time

import mpmath
import numpy as np
import pytest

from catdiscord import (
    CatDampingParams,
    DephasingParams,
    binary_entropy,
    concurrence_t,
    concurrence_wootters,
    concurrence_xstate,
    damped_bell_xstate,
    dephase,
    koashi_winter_smin,
    partial_trace,
    quantum_discord_closed,
    quantum_discord_numeric,
    rho_bc,
    sudden_death_time,
)
from catdiscord.correlations import entanglement_of_formation
from catdiscord.dephasing import kraus_operators, sudden_death_time_numeric
from catdiscord.fock_oracle import damped_bell_matrix

P_GRID = [round(0.05 * k, 10) for k in range(1, 20)]
RSQ_GRID = [round(0.1 * k, 10) for k in range(11)]

# [DERIVED] ln 3 to 18 digits, mpmath
LN3 = 1.098612288668109691


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def numeric_grid():
    start = time.perf_counter()
    reports = {
        (p, rsq): quantum_discord_numeric(damped_bell_xstate(CatDampingParams(p, rsq)))
        for p in P_GRID
        for rsq in RSQ_GRID
    }
    return reports, time.perf_counter() - start


def test_01_closed_vs_numeric_discord(numeric_grid, verdict):
    reports, elapsed = numeric_grid
    gap = max(abs(quantum_discord_closed(CatDampingParams(p, r)) - rep.discord) for (p, r), rep in reports.items())
    verdict(1, gap <= 1e-6 and elapsed < 60, f"max |closed - numeric| = {gap:.2e} (tol 1e-6), runtime {elapsed:.1f} s (< 60 s)")


def test_02_koashi_winter(numeric_grid, verdict):
    reports, _ = numeric_grid
    num_gap, bc_gap = 0.0, 0.0
    for (p, r), rep in reports.items():
        params = CatDampingParams(p, r)
        smin = koashi_winter_smin(params)
        num_gap = max(num_gap, abs(rep.smin - smin))
        c = concurrence_wootters(rho_bc(params).to_array())
        bc_gap = max(bc_gap, abs(binary_entropy(0.5 + 0.5 * math.sqrt(1 - c * c)) - smin))
    verdict(2, num_gap <= 1e-8 and bc_gap <= 1e-8, f"minimizer gap {num_gap:.2e}, rho_BC formation gap {bc_gap:.2e} (tol 1e-8)")


def test_03_fock_oracle(verdict):
    start = time.perf_counter()
    worst = 0.0
    for alpha in (0.5, 1.0, 1.5):
        for rsq in (0.0, 0.25, 0.5, 0.75, 1.0):
            oracle = damped_bell_matrix(alpha, rsq, 40).matrix
            closed = damped_bell_xstate(CatDampingParams.from_alpha(alpha, rsq)).to_array()
            worst = max(worst, float(np.abs(oracle - closed).max()))
    elapsed = time.perf_counter() - start
    verdict(3, worst <= 1e-10 and elapsed < 5, f"max entry difference {worst:.2e} (tol 1e-10), runtime {elapsed:.2f} s (< 5 s)")


def test_04_limits(verdict):
    pure_d, pure_c, lossy_d, lossy_c = 0.0, 0.0, 0.0, 0.0
    for p in P_GRID:
        pure = CatDampingParams(p, 0.0)
        pure_d = max(pure_d, abs(quantum_discord_closed(pure) - binary_entropy(0.5 + p / (1 + p * p))))
        pure_c = max(pure_c, abs(concurrence_xstate(damped_bell_xstate(pure)) - (1 - p * p) / (1 + p * p)))
        lossy = CatDampingParams(p, 1.0)
        X = damped_bell_xstate(lossy)
        lossy_d = max(lossy_d, abs(quantum_discord_closed(lossy)), quantum_discord_numeric(X).discord)
        lossy_c = max(lossy_c, concurrence_xstate(X), concurrence_wootters(X.to_array()))
    ok = pure_d <= 1e-12 and pure_c <= 1e-12 and lossy_d <= 1e-9 and lossy_c == 0.0
    verdict(
        4,
        ok,
        f"rsq=0 discord gap {pure_d:.1e}, concurrence gap {pure_c:.1e} (tol 1e-12); "
        f"rsq=1 discord {lossy_d:.1e} (tol 1e-9), concurrence {lossy_c!r} (exact 0)",
    )


def test_05_discord_peak_at_half(verdict):
    grid = np.round(np.arange(0.05, 0.95 + 1e-9, 0.005), 10)
    vals = [quantum_discord_closed(CatDampingParams(float(p), 0.5)) for p in grid]
    best = float(grid[int(np.argmax(vals))])
    verdict(5, 0.35 <= best <= 0.45, f"argmax p = {best} (window [0.35, 0.45])")


def test_06_monotone_in_rsq(numeric_grid, verdict):
    reports, _ = numeric_grid
    worst_closed, worst_num = -math.inf, -math.inf
    for p in P_GRID:
        closed = [quantum_discord_closed(CatDampingParams(p, r)) for r in RSQ_GRID]
        num = [reports[(p, r)].discord for r in RSQ_GRID]
        worst_closed = max(worst_closed, max(b - a for a, b in zip(closed, closed[1:])))
        worst_num = max(worst_num, max(b - a for a, b in zip(num, num[1:])))
    ok = worst_closed <= 1e-9 and worst_num <= 1e-9
    verdict(6, ok, f"largest increase along rsq: closed {worst_closed:.1e}, numeric {worst_num:.1e} (slack 1e-9)")


def test_07_dephasing(verdict):
    conc_gap, t0_gap = 0.0, 0.0
    for p in (0.1, 0.3, 0.5, 0.7, 0.9):
        for rsq in (0.25, 0.5, 0.75):
            params = CatDampingParams(p, rsq)
            X = damped_bell_xstate(params)
            for gt in np.linspace(0.0, 3.0, 10):
                d = DephasingParams(1.0, float(gt))
                conc_gap = max(conc_gap, abs(concurrence_t(params, d) - concurrence_wootters(dephase(X, d).to_array())))
            t0_gap = max(t0_gap, abs(sudden_death_time_numeric(params, 1.0) - sudden_death_time(params, 1.0)))
    ln3_gap = abs(sudden_death_time(CatDampingParams(0.25, 0.5), 1.0) - LN3)
    ok = conc_gap <= 1e-10 and t0_gap <= 1e-10 and ln3_gap <= 1e-12
    verdict(7, ok, f"concurrence gap {conc_gap:.1e}, bisection t0 gap {t0_gap:.1e} (tol 1e-10), |t0 - ln 3| = {ln3_gap:.1e} (tol 1e-12)")


def test_08_discord_after_sudden_death(verdict):
    params = CatDampingParams(0.5, 0.5)
    t = 2 * sudden_death_time(params, 1.0)
    Xt = dephase(damped_bell_xstate(params), DephasingParams(1.0, t))
    c = concurrence_wootters(Xt.to_array())
    d = quantum_discord_numeric(Xt).discord
    verdict(8, c == 0.0 and d > 1e-4, f"at t = 2 t0 = {t:.6f}: concurrence {c!r}, discord {d:.6e} (> 1e-4)")


def test_09_channel_sanity(verdict):
    rng = np.random.default_rng(9)
    worst_trace, worst_eig = 0.0, math.inf
    for p, rsq, gamma in rng.uniform(size=(1000, 3)):
        X = damped_bell_xstate(CatDampingParams(float(p), float(rsq)))
        Y = dephase(X, DephasingParams(1.0, -math.log1p(-float(gamma))))
        rho = Y.to_array()
        worst_trace = max(worst_trace, abs(np.trace(rho).real - 1))
        worst_eig = min(worst_eig, float(np.linalg.eigvalsh(rho).min()))
        Y.check_density()

    # completeness in binary64: off-diagonals and the first entry are exact, the
    # last entry carries the rounding of two square roots
    float_gap, structural = 0.0, True
    for gamma in np.linspace(0, 1, 101):
        total = sum(e.conj().T @ e for e in kraus_operators(float(gamma)))
        structural &= total[0, 0] == 1 and total[0, 1] == 0 and total[1, 0] == 0
        float_gap = max(float_gap, abs(total[1, 1] - 1))
    # and in exact arithmetic for the same operator entries
    with mpmath.workdps(60):
        exact_gap = max(
            abs(mpmath.sqrt(1 - mpmath.mpf(g)) ** 2 + mpmath.sqrt(mpmath.mpf(g)) ** 2 - 1)
            for g in np.linspace(0, 1, 101)
        )
    ok = worst_trace <= 1e-12 and worst_eig >= -1e-10 and structural and float_gap <= 4.5e-16 and exact_gap < 1e-55
    verdict(
        9,
        ok,
        f"1000 triples: trace gap {worst_trace:.1e}, min eigenvalue {worst_eig:.1e}; "
        f"Kraus completeness gap {float(exact_gap):.0e} exact, {float_gap:.1e} in binary64",
    )


def test_10_marginal_a_invariance(verdict):
    worst = 0.0
    for p in P_GRID:
        ref = partial_trace(damped_bell_xstate(CatDampingParams(p, 0.0)), "A").eigenvalues().values
        for rsq in RSQ_GRID[1:]:
            vals = partial_trace(damped_bell_xstate(CatDampingParams(p, rsq)), "A").eigenvalues().values
            worst = max(worst, float(np.max(np.abs(np.asarray(vals) - np.asarray(ref)))))
    verdict(10, worst <= 1e-12, f"largest A-marginal eigenvalue drift {worst:.1e} (tol 1e-12)")

"""Independent numeric references: regression transform, kernel quadrature."""

import math

import numpy as np
import pytest
from scipy.special import wofz

from pbgfluor import (
    PhysicalParams,
    ReservoirModel,
    UnsupportedModelError,
    free_space_spectrum,
    steady_state,
)
from pbgfluor.oracle import (
    integrate_markovian_bloch,
    kernel_time_domain,
    kernel_transform_check,
    markov_generator,
    regression_spectrum,
    validate_suite,
)


def free(rabi, gam=1.0, delta=0.0):
    return PhysicalParams.make(0.0, rabi, ReservoirModel.free_space(gam), delta=delta)


def band(omega_a):
    return PhysicalParams.make(omega_a, 1.0, ReservoirModel.band_edge(100.0))


def test_regression_matches_closed_form_over_seeded_configs():
    rng = np.random.default_rng(7)
    for _ in range(6):
        gam = rng.uniform(0.3, 3.0)
        O = rng.uniform(0.5, 20.0)
        d = rng.uniform(-5.0, 5.0)
        p = free(O, gam=gam, delta=d)
        span = 1.5 * (O + 5.0 * gam)
        w = np.linspace(-span, span, 801)
        _, s_closed = free_space_spectrum(w, p)
        res = regression_spectrum(p, omega=w)
        assert np.max(np.abs(res.s_inc - s_closed)) < 1e-12 * np.max(s_closed)


def test_regression_parseval_on_default_grid():
    p = free(5.0, delta=0.8)
    res = regression_spectrum(p)
    ss = steady_state(p)
    total = res.coherent_weight + np.trapezoid(res.s_inc, res.omega)
    exact = 2.0 * math.pi ** 2 * (1.0 + ss.sz)
    assert abs(total - exact) < 1e-6 * exact
    assert res.meta["refine_rounds"] >= 1


def test_regression_honors_explicit_grid_and_tau_guard():
    p = free(2.0)
    w = np.array([3.0, -1.0, 0.5, -1.0])
    res = regression_spectrum(p, omega=w)
    assert np.array_equal(res.omega, np.array([-1.0, 0.5, 3.0]))
    with pytest.raises(ValueError, match="tau_max"):
        regression_spectrum(p, tau_max=1.0)


def test_trajectory_relaxes_to_steady_state():
    p = free(3.0, gam=1.0, delta=0.5)
    traj = integrate_markovian_bloch(p, 60.0)
    ss = steady_state(p)
    assert abs(traj.sm[-1] - ss.sm) < 1e-8
    assert abs(traj.sz[-1] - ss.sz) < 1e-8
    assert traj.meta["n_steps"] > 10 and traj.meta["nfev"] > 0


def test_trajectory_started_at_steady_state_stays_there():
    p = free(1.5)
    ss = steady_state(p)
    traj = integrate_markovian_bloch(p, 5.0, initial=(ss.sm, ss.sp, ss.sz))
    assert np.max(np.abs(traj.sm - ss.sm)) < 1e-8
    assert np.max(np.abs(traj.sz - ss.sz)) < 1e-8


def test_generator_fixed_point_is_the_steady_state():
    p = free(4.0, gam=2.0, delta=-1.0)
    L, b = markov_generator(p)
    ss = steady_state(p)
    v = np.array([ss.sm, ss.sp, ss.sz], dtype=complex)
    assert np.max(np.abs(L @ v + b)) < 1e-12


def test_kernel_quadrature_agrees_with_faddeeva_form():
    p = band(102.0)
    taus = np.array([0.01, 0.05, 0.2, 0.7, 1.9])
    got = kernel_time_domain(taus, p)
    oc = 100.0
    phi = (np.sqrt(np.pi / (1j * taus))
           - np.pi * math.sqrt(oc) * wofz(1j * np.sqrt(1j * oc * taus)))
    ref = (1.0 / math.pi) * np.exp(1j * (102.0 - oc) * taus) * phi
    assert np.max(np.abs(got - ref) / np.abs(ref)) < 1e-7


def test_kernel_quadrature_input_guards():
    p = band(102.0)
    with pytest.raises(ValueError, match="tau > 0"):
        kernel_time_domain(np.array([0.5, -0.1]), p)
    with pytest.raises(UnsupportedModelError):
        kernel_time_domain(0.5, free(1.0))


def test_transform_round_trip_and_causality():
    rep = kernel_transform_check(band(102.0))
    assert rep.max_residual < 1e-5
    assert rep.gap_real_fraction < 1e-5
    assert rep.causality_ratio < 1e-6
    with pytest.raises(ValueError, match="negative"):
        kernel_transform_check(band(102.0), causality_tau=(0.5,))


def test_validate_suite_quick_passes_everything():
    checks = validate_suite(quick=True)
    names = [c.name for c in checks]
    assert len(names) == len(set(names))
    assert len(checks) >= 10
    for c in checks:
        assert c.passed, f"{c.name}: value {c.value:.3e} vs {c.threshold:.1e}"

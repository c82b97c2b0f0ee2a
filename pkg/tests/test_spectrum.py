"""Spectrum evaluators, grids, peak analysis, and the offset scan."""

import math

import numpy as np
import pytest

from pbgfluor import (
    PhysicalParams,
    ReservoirModel,
    UnsupportedModelError,
    build_grid,
    compute_spectrum,
    default_grid,
    effective_gamma,
    free_space_spectrum,
    mollow_limit_spectrum,
    offset_scan,
    pbg_noise_correlations,
    pbg_spectrum,
    peak_analysis,
    solution_coefficients,
    steady_state,
)


def free(rabi, gam=1.0, delta=0.0):
    return PhysicalParams.make(0.0, rabi, ReservoirModel.free_space(gam), delta=delta)


def band(omega_a, rabi=1.0):
    return PhysicalParams.make(omega_a, rabi, ReservoirModel.band_edge(100.0))


def test_free_space_spectrum_even_despite_detuning():
    p = free(6.0, gam=1.4, delta=2.3)
    w = np.linspace(0.1, 25.0, 400)
    _, right = free_space_spectrum(w, p)
    _, left = free_space_spectrum(-w, p)
    assert np.max(np.abs(left - right)) == 0.0


def test_free_space_weight_matches_steady_dipole():
    for p in (free(3.0), free(0.7, gam=2.0, delta=1.1)):
        weight, _ = free_space_spectrum(np.array([0.0]), p)
        ss = steady_state(p)
        assert weight == pytest.approx(4.0 * math.pi ** 2 * abs(ss.sm) ** 2, rel=1e-12)


def test_band_weight_matches_steady_dipole():
    p = band(103.0, rabi=2.0)
    weight, _ = pbg_spectrum(np.array([0.0]), p)
    ss = steady_state(p)
    assert weight == pytest.approx(4.0 * math.pi ** 2 * abs(ss.sm) ** 2, rel=1e-10)


def test_compute_spectrum_parseval_free_space():
    p = free(5.0, gam=1.0, delta=0.8)
    res = compute_spectrum(p)
    total = res.coherent_weight + np.trapezoid(res.s_inc, res.omega)
    ss = steady_state(p)
    assert total == pytest.approx(2.0 * math.pi ** 2 * (1.0 + ss.sz), rel=1e-6)


def test_strong_drive_approaches_limit_triplet():
    # the limiting triplet is an Omega -> infinity form; its residual
    # shrinks like Gamma/Omega, so check it tightens between two drives
    devs = []
    for O in (20.0, 60.0):
        p = free(O)
        w = np.linspace(-1.5 * O, 1.5 * O, 2001)
        _, full = free_space_spectrum(w, p)
        _, lim = mollow_limit_spectrum(w, p)
        devs.append(np.max(np.abs(full - lim)) / np.max(full))
    assert devs[0] < 2e-2 and devs[1] < 5e-3
    assert devs[1] < devs[0] / 2.0


def test_printed_band_formula_equals_noise_assembly():
    # same spectrum assembled from the closed inverse and the correlation
    # coefficients, term by term, instead of the simplified expression
    p = band(107.0, rabi=2.0)
    ss = steady_state(p)
    w = np.linspace(-6.9, 6.9, 31)
    Cw = solution_coefficients(w, p)
    Cm = solution_coefficients(-w, p)
    twopi = 2.0 * math.pi
    assembled = np.empty(w.size, dtype=complex)
    for k, wk in enumerate(w):
        nc = pbg_noise_correlations(float(wk), float(-wk), p)
        c_mp = twopi * nc.minus_plus_stationary
        c_zz = twopi * (nc.zz_stationary + nc.zz_mean_sz * ss.sz)
        c_mz = twopi * nc.minus_z_mean_sm * ss.sm
        c_zp = twopi * nc.z_plus_mean_sp * ss.sp
        assembled[k] = (Cw[k, 1, 0] * Cm[k, 0, 1] * c_mp
                        + Cw[k, 1, 2] * Cm[k, 0, 2] * c_zz
                        + Cw[k, 1, 0] * Cm[k, 0, 2] * c_mz
                        + Cw[k, 1, 2] * Cm[k, 0, 1] * c_zp)
    _, s = pbg_spectrum(w, p)
    assert np.max(np.abs(assembled.imag)) < 1e-12 * np.max(s)
    assert np.max(np.abs(assembled.real - s)) < 1e-12 * np.max(s)


def test_band_support_ends_at_the_edge():
    p = band(100.27)
    edge = -0.27
    w = np.linspace(-3.0, 3.0, 1201)
    _, s = pbg_spectrum(w, p)
    assert np.all(s[w < edge] == 0.0)
    assert np.all(s[w > edge + 1e-6] > 0.0)
    _, s_edge = pbg_spectrum(np.array([edge]), p)
    assert s_edge[0] == 0.0


def test_band_spectrum_requires_resonant_drive():
    p = PhysicalParams.make(110.0, 1.0, ReservoirModel.band_edge(100.0), delta=0.3)
    with pytest.raises(UnsupportedModelError):
        pbg_spectrum(np.array([0.0]), p)


def test_undriven_spectra_vanish():
    for p in (free(0.0), band(110.0, rabi=0.0)):
        res = compute_spectrum(p)
        assert res.coherent_weight == 0.0
        assert np.max(np.abs(res.s_inc)) == 0.0
        assert len(peak_analysis(res).peaks) == 0


def test_effective_gamma_both_models():
    assert effective_gamma(free(1.0, gam=2.7)) == pytest.approx(2.7)
    p = band(104.0)
    # 2 Re G(0) = N(0)/2 = 1/26 at this offset
    assert effective_gamma(p) == pytest.approx(1.0 / 26.0, rel=1e-12)


def test_build_grid_shape_and_clustering():
    g = build_grid(-10.0, 10.0, centers=(-2.0, 0.0, 2.0), widths=(0.1, 0.1, 0.1),
                   edge=-9.0)
    assert np.all(np.diff(g) > 0)
    assert g[0] == -10.0 and g[-1] == 10.0
    # clusters really concentrate samples near the centers
    near = np.sum(np.abs(g - 2.0) < 0.05)
    far = np.sum(np.abs(g - 5.0) < 0.05)
    assert near > 4 * max(far, 1)


def test_compute_spectrum_meta_and_grid():
    p = band(110.0)
    res = compute_spectrum(p)
    assert res.meta["clamped"] == 0
    assert res.meta["refine_rounds"] >= 1
    assert res.meta["ill_conditioned"] == 0
    assert np.all(np.diff(res.omega) > 0)
    assert np.min(res.s_inc) >= 0.0
    # explicit grids are honored as given
    w = np.linspace(-2.0, 2.0, 257)
    res2 = compute_spectrum(p, w, refine=False)
    assert res2.omega.size == 257
    assert np.array_equal(res2.omega, w)


def test_peak_analysis_single_lorentzian_exact():
    w = np.linspace(-20.0, 20.0, 120_001)
    s = 10.0 / (1.0 + w ** 2)

    class Fake:
        omega = w
        s_inc = s
        coherent_weight = 0.0

    table = peak_analysis(Fake())
    assert len(table.peaks) == 1
    pk = table.peaks[0]
    assert pk.location == pytest.approx(0.0, abs=1e-9)
    assert pk.height == pytest.approx(10.0, rel=1e-6)
    assert pk.fwhm == pytest.approx(2.0, rel=1e-3)
    assert pk.power == pytest.approx(np.trapezoid(s, w), rel=1e-12)


def test_peak_analysis_separates_two_lorentzians():
    w = np.linspace(-20.0, 20.0, 120_001)
    s = 4.0 / (1.0 + ((w + 6.0) / 0.5) ** 2) + 10.0 / (1.0 + w ** 2)

    class Fake:
        omega = w
        s_inc = s
        coherent_weight = 0.0

    table = peak_analysis(Fake())
    assert len(table.peaks) == 2
    lo, hi = sorted(table.peaks, key=lambda pk: pk.location)
    # each tail raises the other apex and drags it slightly inward
    assert lo.location == pytest.approx(-6.0, abs=0.05)
    assert hi.location == pytest.approx(0.0, abs=0.05)
    assert lo.height == pytest.approx(4.0 + 10.0 / 37.0, rel=1e-2)
    assert hi.height == pytest.approx(10.0 + 4.0 / 145.0, rel=1e-2)
    assert np.isfinite(lo.fwhm) and np.isfinite(hi.fwhm)
    assert lo.power + hi.power == pytest.approx(np.trapezoid(s, w), rel=1e-12)


def test_fwhm_nan_when_window_ends_above_half_height():
    w = np.linspace(-0.6, 5.0, 20_001)
    s = 10.0 / (1.0 + ((w - 0.1) / 2.0) ** 2)

    class Fake:
        omega = w
        s_inc = s
        coherent_weight = 0.0

    table = peak_analysis(Fake())
    assert len(table.peaks) == 1
    pk = table.peaks[0]
    assert pk.height == pytest.approx(10.0, rel=1e-4)
    # left end of the window sits far above half height, so no left crossing
    assert math.isnan(pk.fwhm)


def test_offset_scan_rows_and_thread_consistency():
    p = band(110.0)
    offsets = [20.0, 5.0, 1.0]
    seq = offset_scan(p, offsets, threads=1)
    par = offset_scan(p, offsets, threads=3)
    assert [r.offset for r in seq] == offsets
    for a, b in zip(seq, par):
        assert a.error is None and b.error is None
        assert a.omega_a == pytest.approx(100.0 + a.offset)
        assert a.power == pytest.approx(b.power, rel=0.0)
        assert len(a.table.peaks) == len(b.table.peaks)


def test_offset_scan_needs_band_model():
    with pytest.raises(UnsupportedModelError):
        offset_scan(free(1.0), [1.0])


def test_default_grid_covers_the_triplet():
    p = free(12.0, gam=1.0)
    g = default_grid(p)
    assert g.min() < -12.0 - 5.0 and g.max() > 12.0 + 5.0
    p2 = band(110.0)
    g2 = default_grid(p2)
    # reaches past the cut at -10 by a small margin, but not wildly so
    assert -11.0 < g2.min() < -10.0
    assert g2.max() > 1.0

"""Drive-dressed kernels: reduction limits, noise limits, and deviations."""

import math

import numpy as np
import pytest

from pbgfluor import (
    PhysicalParams,
    ReservoirModel,
    UnsupportedModelError,
    default_grid,
    free_space_spectrum,
    pbg_noise_correlations,
    steady_state,
    system_matrix,
)
from pbgfluor.first_order import (
    first_order_noise_correlations,
    first_order_spectrum,
    first_order_steady_state,
    first_order_system,
    order_comparison,
    order_comparison_reduction_error,
    shifted_kernels,
)


def band(omega_a, rabi):
    return PhysicalParams.make(omega_a, rabi, ReservoirModel.band_edge(100.0))


def free(rabi, gam=1.0, delta=0.0):
    return PhysicalParams.make(0.0, rabi, ReservoirModel.free_space(gam), delta=delta)


def test_reduction_error_is_exactly_zero():
    assert order_comparison_reduction_error(band(110.0, 2.0)) == 0.0
    assert order_comparison_reduction_error(free(3.0, delta=0.7)) == 0.0


def test_zero_drive_band_system_reduces_bit_for_bit():
    p = band(104.0, 0.0)
    for w in (-2.0, 0.0, 1.3):
        a = first_order_system(w, p)
        b = system_matrix(w, p)
        assert np.array_equal(a.matrix, b.matrix)
        assert np.array_equal(a.delta_source, b.delta_source)


def test_free_space_dressing_collapses_at_any_drive():
    p = free(7.0, gam=1.3, delta=-0.4)
    for w in (-9.0, 0.0, 4.2):
        a = first_order_system(w, p)
        b = system_matrix(w, p)
        assert np.array_equal(a.matrix, b.matrix)
    w = np.linspace(-25.0, 25.0, 301)
    wt0, s0 = free_space_spectrum(w, p)
    wt1, s1 = first_order_spectrum(w, p)
    assert wt1 == wt0
    assert np.array_equal(s1, s0)


def test_shifted_kernels_recombine_the_plain_pair():
    p = band(107.0, 2.0)
    sk = shifted_kernels(0.9, p)
    # cos and sin parts resum to the two shifted kernel values
    assert sk.cos_kernel + 1j * sk.sin_kernel == pytest.approx(sk.Gp, rel=1e-14)
    assert sk.cos_kernel - 1j * sk.sin_kernel == pytest.approx(sk.Gm, rel=1e-14)
    assert sk.cos_conj + 1j * sk.sin_conj == pytest.approx(sk.Gcp, rel=1e-14)


def test_dressed_means_conjugation_and_weak_drive_limit():
    p = band(106.0, 1e-3)
    sm, sp, sz = first_order_steady_state(p)
    assert sp == pytest.approx(sm.conjugate(), rel=1e-12)
    assert isinstance(sz, float)
    ss = steady_state(p)
    assert sm == pytest.approx(ss.sm, rel=1e-4)
    assert sz == pytest.approx(ss.sz, rel=1e-4)


def test_dressed_noise_reaches_plain_coefficients_at_weak_drive():
    p = band(104.0, 1e-3)
    w1 = 0.3
    fo = first_order_noise_correlations(w1, w1, p)
    nc = pbg_noise_correlations(w1, w1, p)
    ss = steady_state(p)
    twopi = 2.0 * math.pi
    assert fo.minus_plus == pytest.approx(twopi * nc.minus_plus_stationary, rel=1e-3)
    # zz is itself O(rabi^2), and its dressed offset sits at the same
    # order, a kernel-slope floor that does not shrink with the drive
    assert fo.zz == pytest.approx(
        twopi * (nc.zz_stationary + nc.zz_mean_sz * ss.sz), rel=1e-2)
    assert fo.minus_z == pytest.approx(twopi * nc.minus_z_mean_sm * ss.sm, rel=1e-3)
    assert fo.z_plus == pytest.approx(twopi * nc.z_plus_mean_sp * ss.sp, rel=1e-3)


def test_z_plus_cutoff_variants_agree_on_diagonal_only():
    p = band(100.5, 1.0)
    mirrored = first_order_noise_correlations(0.8, 0.8, p)
    printed = first_order_noise_correlations(0.8, 0.8, p,
                                             printed_z_plus_cutoffs=True)
    assert printed.z_plus == mirrored.z_plus
    assert printed.theta["z_plus_variant"] == "printed"
    # off the diagonal the second argument closes one cutoff for the
    # printed variant while the mirrored one keeps it open
    mirrored = first_order_noise_correlations(0.8, -0.3, p)
    printed = first_order_noise_correlations(0.8, -0.3, p,
                                             printed_z_plus_cutoffs=True)
    assert printed.z_plus != mirrored.z_plus
    assert mirrored.minus_plus == printed.minus_plus


def test_band_noise_requires_band_model():
    with pytest.raises(UnsupportedModelError):
        first_order_noise_correlations(0.0, 0.0, free(1.0))


def test_detuned_band_drive_rejected():
    p = PhysicalParams.make(105.0, 1.0, ReservoirModel.band_edge(100.0), delta=0.5)
    with pytest.raises(UnsupportedModelError):
        first_order_system(0.0, p)
    with pytest.raises(UnsupportedModelError):
        first_order_spectrum(np.array([0.0]), p)


def test_weak_drive_deviation_plateau_regression():
    # the relative dressing of the Rabi entries is drive-independent, so
    # the deviation saturates at a reservoir-set floor instead of
    # shrinking with the drive; frozen level for the gap-10 point
    p = band(110.0, 0.01)
    oc = order_comparison(p, default_grid(p))
    assert 4.4e-3 < oc.max_peak_relative < 5.5e-3


def test_deviation_grows_toward_the_edge():
    devs = []
    for wa in (110.0, 105.0, 103.0, 101.0):
        p = band(wa, 0.1)
        oc = order_comparison(p, default_grid(p))
        devs.append(oc.max_peak_relative)
    assert devs[0] < devs[1] < devs[2] < devs[3]
    assert devs[0] == pytest.approx(3.03e-3, rel=0.1)
    assert devs[3] == pytest.approx(4.87e-2, rel=0.1)


def test_strong_drive_at_the_edge_reshapes_the_spectrum():
    p = band(100.27, 1.0)
    oc = order_comparison(p, default_grid(p))
    assert oc.max_peak_relative > 0.5
    assert oc.meta["weight_relative"] > 1.0


def test_dressed_spectrum_stays_nonnegative():
    for wa, O in ((100.27, 1.0), (101.0, 0.1), (110.0, 2.0)):
        p = band(wa, O)
        w = default_grid(p)
        _, s = first_order_spectrum(w, p)
        assert np.min(s) > -1e-10 * np.max(s)

"""Frequency-domain memory kernel identities and frozen spot values."""

import numpy as np
import pytest
from scipy.optimize import brentq

from pbgfluor import (
    PhysicalParams,
    ReservoirModel,
    memory_kernel,
    memory_kernel_conj,
    noise_strength,
    shifted_noise_strengths,
)


def band(omega_a, rabi=1.0, omega_c=100.0):
    return PhysicalParams.make(omega_a, rabi, ReservoirModel.band_edge(omega_c))


def test_kernel_on_edge_spot_value():
    # atom exactly on the edge: G(0) = -i beta^{3/2} / sqrt(omega_c)
    p = band(100.0)
    assert memory_kernel(np.array([0.0]), p)[0] == pytest.approx(-0.1j, abs=1e-15)


def test_noise_strength_spot_value():
    # omega_a = 104: N(0) = 4 sqrt(4) / 104 = 1/13
    p = band(104.0)
    assert noise_strength(np.array([0.0]), p)[0] == pytest.approx(1.0 / 13.0, rel=1e-14)


def test_shifted_noise_spot_values():
    p = band(104.0, rabi=3.0)
    n1, n2 = shifted_noise_strengths(np.array([0.0]), p)
    assert n1[0] == pytest.approx(np.sqrt(7.0) / 107.0, rel=1e-14)
    assert n2[0] == pytest.approx(1.0 / 101.0, rel=1e-14)


def test_shifted_noise_cuts_off_below_edge():
    p = band(104.0, rabi=3.0)
    # the down-shifted branch dies once omega + omega_a - rabi < omega_c
    w = np.array([-1.5])
    n1, n2 = shifted_noise_strengths(w, p)
    assert n1[0] > 0.0
    assert n2[0] == 0.0


def test_conjugation_identity_dense():
    p = band(110.0)
    rng = np.random.default_rng(20260822)
    w = rng.uniform(-0.99 * p.omega_a, 400.0, 10_000)
    gc = memory_kernel_conj(w, p)
    assert np.max(np.abs(gc - np.conj(memory_kernel(-w, p)))) < 1e-12


def test_noise_equals_four_re_kernel():
    p = band(107.3)
    w = np.linspace(-0.95 * p.omega_a, 350.0, 10_000)
    g = memory_kernel(w, p)
    assert np.max(np.abs(noise_strength(w, p) - 4.0 * g.real)) < 1e-12


def test_kernel_passive_and_gap_imaginary():
    p = band(103.0)
    w = np.linspace(-0.95 * p.omega_a, 500.0, 20_001)
    g = memory_kernel(w, p)
    assert np.min(g.real) >= 0.0
    edge = p.reservoir.omega_c - p.omega_a
    in_gap = w < edge
    assert np.max(np.abs(g.real[in_gap])) == 0.0
    assert np.all(g.imag[in_gap] < 0.0)


def test_amplitude_width_is_four_edge_frequencies():
    p = band(110.0)
    oc = p.reservoir.omega_c

    def amp(w):
        return float(np.abs(memory_kernel(np.array([w]), p)[0]))

    peak_w = oc - p.omega_a
    half = amp(peak_w) / 2.0
    lo = brentq(lambda w: amp(w) - half, peak_w - 3.0 * oc, peak_w, xtol=1e-10)
    hi = brentq(lambda w: amp(w) - half, peak_w, peak_w + 6.0 * oc, xtol=1e-10)
    assert hi - lo == pytest.approx(4.0 * oc, rel=1e-6)


def test_free_space_kernel_is_flat():
    p = PhysicalParams.make(0.0, 3.0, ReservoirModel.free_space(2.0), delta=0.4)
    w = np.linspace(-50.0, 50.0, 101)
    g = memory_kernel(w, p)
    gc = memory_kernel_conj(w, p)
    assert np.max(np.abs(g - 1.0)) == 0.0
    assert np.max(np.abs(gc - 1.0)) == 0.0
    assert np.max(np.abs(noise_strength(w, p) - 4.0)) == 0.0


def test_noise_strength_guards_unphysical_frequencies():
    p = band(110.0)
    with pytest.raises(ValueError):
        noise_strength(np.array([-p.omega_a]), p)

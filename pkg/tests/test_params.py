"""Parameter containers, coupling-rate arithmetic, and unit rescaling."""

import math

import pytest

from pbgfluor import (
    PhysicalParams,
    RawCouplingConstants,
    ReservoirKind,
    ReservoirModel,
    compute_beta,
    normalize,
)


def test_reservoir_field_discipline():
    free = ReservoirModel.free_space(2.0)
    assert free.kind is ReservoirKind.FREE_SPACE
    assert free.rate == 2.0 and free.unit_name == "Gamma"
    band = ReservoirModel.band_edge(100.0, beta=0.5)
    assert band.rate == 0.5 and band.unit_name == "beta"
    with pytest.raises(ValueError):
        ReservoirModel(kind=ReservoirKind.FREE_SPACE, gamma=1.0, beta=1.0)
    with pytest.raises(ValueError):
        ReservoirModel.free_space(-1.0)
    with pytest.raises(ValueError):
        ReservoirModel.band_edge(0.0)


def test_params_detuning_consistency():
    p = PhysicalParams.make(110.0, 1.0, ReservoirModel.band_edge(100.0), delta=0.0)
    assert p.omega_L == p.omega_a
    q = PhysicalParams.make(0.0, 5.0, ReservoirModel.free_space(1.0), delta=1.5)
    assert q.omega_L == 1.5
    with pytest.raises(ValueError):
        PhysicalParams(omega_a=10.0, omega_L=12.0, delta=1.0, rabi=1.0,
                       reservoir=ReservoirModel.free_space(1.0))
    with pytest.raises(ValueError):
        PhysicalParams.make(10.0, -1.0, ReservoirModel.free_space(1.0))


def test_beta_from_unit_constants():
    raw = RawCouplingConstants(dipole_moment=1.0, curvature=1.0, eta=1.0,
                               omega_a=1.0, hbar=1.0, epsilon0=1.0)
    # (1/(6 pi))^(2/3), evaluated independently and frozen
    assert compute_beta(raw) == pytest.approx(0.14118847627290323, rel=1e-14)
    assert compute_beta(raw) == pytest.approx((1.0 / (6.0 * math.pi)) ** (2.0 / 3.0),
                                              rel=1e-15)


def test_beta_dipole_power_law():
    base = RawCouplingConstants(dipole_moment=1.0, curvature=1.0, eta=1.0,
                                omega_a=1.0, hbar=1.0, epsilon0=1.0)
    doubled = RawCouplingConstants(dipole_moment=2.0, curvature=1.0, eta=1.0,
                                   omega_a=1.0, hbar=1.0, epsilon0=1.0)
    assert compute_beta(doubled) / compute_beta(base) == pytest.approx(
        4.0 ** (2.0 / 3.0), rel=1e-14)


def test_raw_constants_reject_nonpositive():
    with pytest.raises(ValueError):
        RawCouplingConstants(dipole_moment=1.0, curvature=1.0, eta=0.0, omega_a=1.0)


def test_normalize_rescales_to_unit_rate():
    p = PhysicalParams.make(220.0, 5.0, ReservoirModel.band_edge(200.0, beta=2.0),
                            delta=0.0)
    scaled, s = normalize(p)
    assert s == 2.0
    assert scaled.reservoir.beta == 1.0
    assert scaled.reservoir.omega_c == pytest.approx(100.0)
    assert scaled.omega_a == pytest.approx(110.0)
    assert scaled.rabi == pytest.approx(2.5)
    again, s2 = normalize(scaled)
    assert s2 == 1.0 and again == scaled


def test_normalize_free_space():
    p = PhysicalParams.make(0.0, 12.0, ReservoirModel.free_space(4.0), delta=2.0)
    scaled, s = normalize(p)
    assert s == 4.0
    assert scaled.reservoir.gamma == 1.0
    assert scaled.rabi == pytest.approx(3.0)
    assert scaled.delta == pytest.approx(0.5)

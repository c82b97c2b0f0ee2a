"""Reservoir memory kernels, density of states, and noise strengths.

The band-edge reservoir has an anisotropic quadratic dispersion near the
gap edge, giving a density of states ~ sqrt(omega - omega_c) above the edge
and zero inside the gap. Its one-sided memory kernel has the closed
frequency-domain form

    G(omega)  = -i beta^(3/2) / (sqrt(omega_c) + sqrt(omega_c - omega_a - omega))
    Gc(omega) = +i beta^(3/2) / (sqrt(omega_c) + sqrt(omega_c - omega_a + omega))

with the square root of a negative radicand continued to -i*sqrt|x| inside
G and +i*sqrt|x| inside Gc. That branch choice keeps Re G >= 0 (passivity),
makes the kernel purely imaginary inside the gap, and ties the noise
strength to dissipation exactly: N(omega) = 4 Re G(omega).

Free space is the Markovian limit: both kernels are the constant Gamma/2.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedModelError
from .params import PhysicalParams, ReservoirKind, ReservoirModel

__all__ = [
    "memory_kernel",
    "memory_kernel_conj",
    "dos",
    "noise_strength",
    "shifted_noise_strengths",
]


def _sqrt_lower(x: np.ndarray) -> np.ndarray:
    """sqrt on the branch that sends negative x to -i*sqrt(|x|)."""
    x = np.asarray(x, dtype=float)
    r = np.sqrt(np.abs(x))
    return np.where(x >= 0.0, r + 0.0j, -1.0j * r)


def _sqrt_upper(x: np.ndarray) -> np.ndarray:
    """sqrt on the branch that sends negative x to +i*sqrt(|x|)."""
    x = np.asarray(x, dtype=float)
    r = np.sqrt(np.abs(x))
    return np.where(x >= 0.0, r + 0.0j, +1.0j * r)


def _scalar_like(value: np.ndarray, template) -> np.ndarray | complex | float:
    if np.isscalar(template) or np.ndim(template) == 0:
        return value[()] if isinstance(value, np.ndarray) else value
    return value


def memory_kernel(omega, params: PhysicalParams):
    """Frequency-domain memory kernel G(omega).

    Parameters
    ----------
    omega : float or ndarray
        Frequency relative to the atomic transition.
    params : PhysicalParams

    Returns
    -------
    complex or ndarray of complex
        Gamma/2 for free space; the band-edge closed form otherwise.
    """
    w = np.asarray(omega, dtype=float)
    res = params.reservoir
    if res.kind is ReservoirKind.FREE_SPACE:
        out = np.full(w.shape, 0.5 * res.gamma, dtype=complex)
        return _scalar_like(out, omega)
    b32 = res.beta ** 1.5
    root = _sqrt_lower(res.omega_c - params.omega_a - w)
    out = -1.0j * b32 / (np.sqrt(res.omega_c) + root)
    return _scalar_like(out, omega)


def memory_kernel_conj(omega, params: PhysicalParams):
    """Frequency-domain conjugate kernel Gc(omega).

    Satisfies Gc(omega) == conj(G(-omega)) for real omega.
    """
    w = np.asarray(omega, dtype=float)
    res = params.reservoir
    if res.kind is ReservoirKind.FREE_SPACE:
        out = np.full(w.shape, 0.5 * res.gamma, dtype=complex)
        return _scalar_like(out, omega)
    b32 = res.beta ** 1.5
    root = _sqrt_upper(res.omega_c - params.omega_a + w)
    out = +1.0j * b32 / (np.sqrt(res.omega_c) + root)
    return _scalar_like(out, omega)


def dos(omega, reservoir: ReservoirModel):
    """Band-edge density of states, in curvature-normalized units.

    sqrt(omega - omega_c) above the edge, zero inside the gap. The flat
    free-space density has no band structure to report, so that model is
    rejected.
    """
    if reservoir.kind is not ReservoirKind.BAND_EDGE:
        raise UnsupportedModelError("density of states is only defined for the band-edge model")
    w = np.asarray(omega, dtype=float)
    out = np.sqrt(np.maximum(w - reservoir.omega_c, 0.0))
    return _scalar_like(out, omega)


def noise_strength(omega, params: PhysicalParams):
    """Noise strength N(omega) entering the Langevin correlations.

    Band edge: 4 beta^(3/2) sqrt(omega_a + omega - omega_c)/(omega_a + omega)
    above the edge, zero below it (the Heaviside factor is built in, with
    N == 0 exactly at the edge). Free space: the constant 2 Gamma. In both
    models N(omega) == 4 Re G(omega).
    """
    w = np.asarray(omega, dtype=float)
    res = params.reservoir
    if res.kind is ReservoirKind.FREE_SPACE:
        out = np.full(w.shape, 2.0 * res.gamma)
        return _scalar_like(out, omega)
    shifted = params.omega_a + w
    if np.any(shifted <= 0.0):
        raise ValueError("noise strength needs omega + omega_a > 0 at every sample")
    above = np.maximum(shifted - res.omega_c, 0.0)
    out = 4.0 * res.beta ** 1.5 * np.sqrt(above) / shifted
    return _scalar_like(out, omega)


def shifted_noise_strengths(omega, params: PhysicalParams):
    """Rabi-shifted noise strengths (N1, N2) for the first-order theory.

    N1 evaluates the single-kernel envelope at omega + rabi and N2 at
    omega - rabi; each vanishes below its own shifted edge. They reduce to
    N/4 at zero drive. Free space gives the constant Gamma/2 for both.
    """
    w = np.asarray(omega, dtype=float)
    res = params.reservoir
    if res.kind is ReservoirKind.FREE_SPACE:
        out = np.full(w.shape, 0.5 * res.gamma)
        return _scalar_like(out, omega), _scalar_like(out.copy(), omega)
    b32 = res.beta ** 1.5
    results = []
    for sign in (+1.0, -1.0):
        shifted = params.omega_a + w + sign * params.rabi
        if np.any(shifted <= 0.0):
            raise ValueError("shifted noise strength needs omega + omega_a "
                             f"{'+' if sign > 0 else '-'} rabi > 0 at every sample")
        above = np.maximum(shifted - res.omega_c, 0.0)
        results.append(b32 * np.sqrt(above) / shifted)
    return _scalar_like(results[0], omega), _scalar_like(results[1], omega)

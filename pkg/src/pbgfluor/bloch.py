"""Frequency-domain linearized Bloch system and its steady state.

The linearized Langevin equations close into a 3x3 linear system for the
transforms of (sigma_-, sigma_+, sigma_z), driven by three noise channels
plus one deterministic delta source at zero frequency. With the shorthand

    f(omega) = -i(omega + delta) + G(omega)
    g(omega) = -i(omega - delta) + Gc(omega)
    h(omega) = -i omega + G(omega) + Gc(omega)

the response denominator is D = Omega^2 (f + g) + 2 f g h, and the closed
inverse of the system matrix is written below in solution_coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConditioningError
from .kernels import memory_kernel, memory_kernel_conj
from .params import PhysicalParams

__all__ = [
    "Shorthand",
    "shorthand",
    "denominator",
    "ill_conditioned",
    "SystemMatrix",
    "system_matrix",
    "SteadyState",
    "steady_state",
    "solution_coefficients",
]

# |D| below this multiple of the local frequency-cubed scale is flagged.
CONDITIONING_TOL = 1e-8


class Shorthand(NamedTuple):
    f: np.ndarray | complex
    g: np.ndarray | complex
    h: np.ndarray | complex


def shorthand(omega, params: PhysicalParams) -> Shorthand:
    """The three response combinations (f, g, h) at the given frequency."""
    w = np.asarray(omega, dtype=float)
    G = memory_kernel(w, params)
    Gc = memory_kernel_conj(w, params)
    f = -1.0j * (w + params.delta) + G
    g = -1.0j * (w - params.delta) + Gc
    h = -1.0j * w + G + Gc
    if np.ndim(omega) == 0:
        return Shorthand(complex(f), complex(g), complex(h))
    return Shorthand(f, g, h)


def denominator(omega, params: PhysicalParams):
    """Response denominator D(omega) = Omega^2 (f + g) + 2 f g h."""
    f, g, h = shorthand(omega, params)
    return params.rabi ** 2 * (f + g) + 2.0 * f * g * h


def ill_conditioned(omega, params: PhysicalParams, tol: float = CONDITIONING_TOL):
    """Flag frequencies where |D| is small against the local cubic scale."""
    w = np.asarray(omega, dtype=float)
    D = denominator(w, params)
    scale = params.rabi ** 3 + np.abs(w) ** 3 + params.reservoir.rate ** 3
    out = np.abs(D) < tol * scale
    return bool(out) if np.ndim(omega) == 0 else out


@dataclass(frozen=True)
class SystemMatrix:
    """The 3x3 system M X = X0 at one frequency.

    ``matrix`` multiplies the unknown vector of transformed operators
    (sigma_-, sigma_+, sigma_z) at their drive-shifted arguments.
    ``delta_source`` holds the coefficients of the deterministic
    delta(omega) term on the right-hand side; the three noise channels
    enter the right-hand side with unit weight.
    """

    matrix: np.ndarray
    delta_source: np.ndarray
    at_frequency: float


def system_matrix(omega: float, params: PhysicalParams) -> SystemMatrix:
    w = float(omega)
    G = complex(memory_kernel(w, params))
    Gc = complex(memory_kernel_conj(w, params))
    O = params.rabi
    d = params.delta
    M = np.array([
        [-1.0j * (w + d) + G, 0.0, -0.5j * O],
        [0.0, -1.0j * (w - d) + Gc, +0.5j * O],
        [-1.0j * O, +1.0j * O, -1.0j * w + G + Gc],
    ], dtype=complex)
    source = np.array([0.0, 0.0, -2.0 * np.pi * (G + Gc)], dtype=complex)
    return SystemMatrix(matrix=M, delta_source=source, at_frequency=w)


class SteadyState(NamedTuple):
    sz: float
    sm: complex
    sp: complex


def steady_state(params: PhysicalParams) -> SteadyState:
    """Long-time means (sigma_z, sigma_-, sigma_+) in the drive frame.

    From the zero-frequency limit of the closed solution:

        <sigma_z> = -2 f0 g0 Gp0 / D0
        <sigma_-> = -i g0 Omega Gp0 / D0,  <sigma_+> its conjugate

    with Gp0 = G(0) + Gc(0). Raises ConditioningError when |D0| is too
    small to divide by, which is how driving an atom inside the gap at
    resonance shows up.
    """
    f0, g0, h0 = shorthand(0.0, params)
    gp0 = complex(memory_kernel(0.0, params)) + complex(memory_kernel_conj(0.0, params))
    D0 = params.rabi ** 2 * (f0 + g0) + 2.0 * f0 * g0 * h0
    scale = params.rabi ** 3 + params.reservoir.rate ** 3
    if abs(D0) < CONDITIONING_TOL * scale:
        raise ConditioningError(
            f"steady state is ill-conditioned: |D(0)| = {abs(D0):.3e}", D0)
    sz = -2.0 * f0 * g0 * gp0 / D0
    sm = -1.0j * g0 * params.rabi * gp0 / D0
    sp = +1.0j * f0 * params.rabi * gp0 / D0
    return SteadyState(sz=float(sz.real), sm=complex(sm), sp=complex(sp))


def solution_coefficients(omega, params: PhysicalParams):
    """Closed-form inverse of the system matrix on the noise channels.

    Returns an array of shape (..., 3, 3): row r gives the coefficients
    with which noise channels (n_-, n_+, n_z) enter the solution for
    (sigma_-, sigma_+, sigma_z)[r]. Multiplying the system matrix by this
    gives the identity.
    """
    w = np.asarray(omega, dtype=float)
    f, g, h = shorthand(w, params)
    O = params.rabi
    D = O ** 2 * (f + g) + 2.0 * f * g * h
    z = np.zeros_like(np.asarray(D))
    rows = [
        [(2.0 * g * h + O ** 2), O ** 2 + z, 1.0j * g * O],
        [O ** 2 + z, (2.0 * f * h + O ** 2), -1.0j * f * O],
        [2.0j * g * O, -2.0j * f * O, 2.0 * f * g],
    ]
    C = np.stack([np.stack([np.asarray(e, dtype=complex) for e in row], axis=-1)
                  for row in rows], axis=-2)
    return C / np.asarray(D, dtype=complex)[..., None, None]

"""Parameter containers and unit handling for the driven-atom model.

All frequencies are angular and measured in a single consistent unit; the
reservoir's own rate (Gamma for free space, beta for the band-edge crystal)
is the natural choice, and ``normalize`` rescales a parameter set so that
rate equals one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import NamedTuple

import scipy.constants

__all__ = [
    "ReservoirKind",
    "ReservoirModel",
    "PhysicalParams",
    "RawCouplingConstants",
    "compute_beta",
    "normalize",
    "NormalizeResult",
]

# Relative slack allowed when checking delta == omega_L - omega_a.
_CONSISTENCY_RTOL = 1e-12


class ReservoirKind(Enum):
    FREE_SPACE = "free_space"
    BAND_EDGE = "band_edge"


@dataclass(frozen=True)
class ReservoirModel:
    """Which photon reservoir the atom couples to, plus its parameters.

    Exactly the fields of the active kind are set: ``gamma`` (spontaneous
    decay rate) for free space, ``beta`` (band-edge coupling rate) and
    ``omega_c`` (band-edge frequency) for the anisotropic crystal.
    """

    kind: ReservoirKind
    gamma: float | None = None
    beta: float | None = None
    omega_c: float | None = None

    def __post_init__(self):
        if self.kind is ReservoirKind.FREE_SPACE:
            if self.gamma is None or self.beta is not None or self.omega_c is not None:
                raise ValueError("free-space reservoir takes gamma and nothing else")
            if not (math.isfinite(self.gamma) and self.gamma > 0):
                raise ValueError(f"gamma must be finite and > 0, got {self.gamma}")
        elif self.kind is ReservoirKind.BAND_EDGE:
            if self.beta is None or self.omega_c is None or self.gamma is not None:
                raise ValueError("band-edge reservoir takes beta and omega_c and nothing else")
            if not (math.isfinite(self.beta) and self.beta > 0):
                raise ValueError(f"beta must be finite and > 0, got {self.beta}")
            if not (math.isfinite(self.omega_c) and self.omega_c > 0):
                raise ValueError(f"omega_c must be finite and > 0, got {self.omega_c}")
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unknown reservoir kind {self.kind}")

    @classmethod
    def free_space(cls, gamma: float) -> "ReservoirModel":
        return cls(kind=ReservoirKind.FREE_SPACE, gamma=gamma)

    @classmethod
    def band_edge(cls, omega_c: float, beta: float = 1.0) -> "ReservoirModel":
        return cls(kind=ReservoirKind.BAND_EDGE, beta=beta, omega_c=omega_c)

    @property
    def rate(self) -> float:
        """The reservoir's own frequency scale (Gamma or beta)."""
        return self.gamma if self.kind is ReservoirKind.FREE_SPACE else self.beta

    @property
    def unit_name(self) -> str:
        return "Gamma" if self.kind is ReservoirKind.FREE_SPACE else "beta"


@dataclass(frozen=True)
class PhysicalParams:
    """Atom and drive parameters against a chosen reservoir.

    ``delta`` is stored redundantly alongside ``omega_L`` and must equal
    ``omega_L - omega_a`` to machine precision; construction enforces that.
    """

    omega_a: float
    omega_L: float
    delta: float
    rabi: float
    reservoir: ReservoirModel

    def __post_init__(self):
        for name in ("omega_a", "omega_L", "delta", "rabi"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.rabi < 0:
            raise ValueError(f"rabi must be >= 0, got {self.rabi}")
        scale = max(1.0, abs(self.omega_L), abs(self.omega_a))
        if abs(self.delta - (self.omega_L - self.omega_a)) > _CONSISTENCY_RTOL * scale:
            raise ValueError(
                f"inconsistent detuning: delta={self.delta} but "
                f"omega_L - omega_a = {self.omega_L - self.omega_a}"
            )
        if self.reservoir.kind is ReservoirKind.BAND_EDGE and self.omega_a <= 0:
            raise ValueError(f"omega_a must be > 0 against a band-edge reservoir, got {self.omega_a}")

    @classmethod
    def make(cls, omega_a: float, rabi: float, reservoir: ReservoirModel,
             delta: float = 0.0) -> "PhysicalParams":
        """Build a parameter set with omega_L derived from the detuning."""
        return cls(omega_a=omega_a, omega_L=omega_a + delta, delta=delta,
                   rabi=rabi, reservoir=reservoir)


@dataclass(frozen=True)
class RawCouplingConstants:
    """Microscopic constants that determine the band-edge coupling rate.

    ``curvature`` is the quadratic dispersion coefficient of the band edge,
    ``eta`` the orientation/geometry factor of the dipole coupling. hbar and
    epsilon0 default to SI values and may be overridden for unit-system
    checks.
    """

    dipole_moment: float
    curvature: float
    eta: float
    omega_a: float
    hbar: float = scipy.constants.hbar
    epsilon0: float = scipy.constants.epsilon_0

    def __post_init__(self):
        for name in ("dipole_moment", "curvature", "eta", "omega_a", "hbar", "epsilon0"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")


def compute_beta(raw: RawCouplingConstants) -> float:
    """Coupling rate beta from microscopic constants.

    beta^(3/2) = omega_a^2 d^2 eta / (6 hbar epsilon0 pi A^(3/2)), so the
    returned beta is that combination to the power 2/3. It scales as the
    4/3 power of the dipole moment.
    """
    beta_32 = (raw.omega_a ** 2 * raw.dipole_moment ** 2 * raw.eta
               / (6.0 * raw.hbar * raw.epsilon0 * math.pi * raw.curvature ** 1.5))
    return beta_32 ** (2.0 / 3.0)


class NormalizeResult(NamedTuple):
    params: PhysicalParams
    scale: float


def normalize(params: PhysicalParams) -> NormalizeResult:
    """Rescale every frequency so the reservoir rate equals one.

    Returns the rescaled parameters together with the scale factor that was
    divided out. Applying it twice is a no-op (the second scale is 1).
    """
    s = params.reservoir.rate
    if params.reservoir.kind is ReservoirKind.FREE_SPACE:
        res = ReservoirModel.free_space(1.0)
    else:
        res = ReservoirModel.band_edge(omega_c=params.reservoir.omega_c / s, beta=1.0)
    scaled = PhysicalParams(
        omega_a=params.omega_a / s,
        omega_L=params.omega_L / s,
        delta=params.delta / s,
        rabi=params.rabi / s,
        reservoir=res,
    )
    return NormalizeResult(scaled, s)

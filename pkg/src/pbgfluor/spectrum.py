"""Steady-state fluorescence spectra, grids, peaks, and scans.

Spectra are reported on the drive-centered frequency axis as a separate
elastic (coherent) delta weight plus an incoherent profile s_inc sampled
on a grid. The normalization follows the frequency-domain correlator
convention throughout: s_inc is 2*pi times the physical one-sided
transform of the incoherent correlation, and the coherent weight equals
4*pi^2*|<sigma_->|^2, so total power integrates to 2*pi^2*(1+<sigma_z>)
in the Markovian limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from .bloch import denominator, ill_conditioned, shorthand, steady_state
from .errors import UnsupportedModelError
from .kernels import memory_kernel, memory_kernel_conj, noise_strength
from .params import PhysicalParams, ReservoirKind, ReservoirModel

__all__ = [
    "SpectrumResult",
    "Peak",
    "PeakTable",
    "free_space_spectrum",
    "mollow_limit_spectrum",
    "NoiseCorrelations",
    "pbg_noise_correlations",
    "pbg_spectrum",
    "build_grid",
    "default_grid",
    "compute_spectrum",
    "total_power",
    "peak_analysis",
    "offset_scan",
    "ScanRow",
    "effective_gamma",
]

# Fraction of the running maximum below which negative samples are treated
# as roundoff and clamped to zero.
CLAMP_TOL = 1e-10


def _require(condition: bool, message: str):
    if not condition:
        raise UnsupportedModelError(message)


def effective_gamma(params: PhysicalParams) -> float:
    """Markovian decay rate seen by the atom: 2 Re G(0)."""
    return 2.0 * complex(memory_kernel(0.0, params)).real


def free_space_spectrum(omega, params: PhysicalParams):
    """Closed-form free-space spectrum at the given frequencies.

    Returns (coherent_weight, s_inc). The elastic line sits at omega = 0
    on this axis (the drive frequency) with weight
    pi^2 Omega^2 (Gamma^2/4 + Delta^2) / A^2, A = Omega^2/2 + Delta^2
    + Gamma^2/4; s_inc is the rational triplet profile.
    """
    _require(params.reservoir.kind is ReservoirKind.FREE_SPACE,
             "free_space_spectrum needs the free-space model")
    w = np.asarray(omega, dtype=float)
    gam = params.reservoir.gamma
    O = params.rabi
    d = params.delta
    A = 0.5 * O ** 2 + d ** 2 + 0.25 * gam ** 2
    weight = math.pi ** 2 * O ** 2 * (0.25 * gam ** 2 + d ** 2) / A ** 2
    B = (gam ** 2 * (A - 2.0 * w ** 2) ** 2
         + w ** 2 * (O ** 2 + d ** 2 + 1.25 * gam ** 2 - w ** 2) ** 2)
    s_inc = math.pi * gam * O ** 4 * (0.5 * O ** 2 + gam ** 2 + w ** 2) / (2.0 * A * B)
    return weight, s_inc


def mollow_limit_spectrum(omega, params: PhysicalParams):
    """Strong-drive limiting triplet: three Lorentzians plus delta weight.

    Heights stand in ratio 1:3:1 with widths 3*Gamma/2, Gamma, 3*Gamma/2.
    Requires resonant drive and Omega > 0.
    """
    _require(params.reservoir.kind is ReservoirKind.FREE_SPACE,
             "mollow_limit_spectrum needs the free-space model")
    if params.delta != 0.0:
        raise ValueError("mollow_limit_spectrum is a resonant-drive limit; delta must be 0")
    if params.rabi <= 0.0:
        raise ValueError("mollow_limit_spectrum needs rabi > 0")
    w = np.asarray(omega, dtype=float)
    gam = params.reservoir.gamma
    O = params.rabi
    weight = 2.0 * math.pi * 2.0 * math.pi * gam ** 2 / (4.0 * O ** 2)
    side = 3.0 * gam / 16.0
    s_inc = 2.0 * math.pi * (
        side / ((w + O) ** 2 + (9.0 / 16.0) * gam ** 2)
        + (gam / 4.0) / (w ** 2 + 0.25 * gam ** 2)
        + side / ((w - O) ** 2 + (9.0 / 16.0) * gam ** 2)
    )
    return weight, s_inc


@dataclass(frozen=True)
class NoiseCorrelations:
    """Stationary structure of the six Langevin correlation pairs.

    Each pair is characterized on the (omega_1, omega_2) plane by the
    coefficient of 2*pi*delta(omega_1 - omega_2) that survives without any
    operator mean (``*_stationary``) plus coefficients multiplying the
    transformed means evaluated at omega_1 - omega_2 (``*_mean``). Pairs
    absent from the fields vanish identically at zero temperature.
    """

    minus_plus_stationary: float
    zz_stationary: float
    zz_mean_sz: float
    minus_z_mean_sm: float
    z_plus_mean_sp: float
    at_frequency: float


def pbg_noise_correlations(omega1: float, omega2: float,
                           params: PhysicalParams) -> NoiseCorrelations:
    """Band-edge noise correlations entering the spectrum assembly.

    The noise strength is evaluated at omega_1 and carries the band-edge
    cutoff; <n_z n_-> and <n_+ n_z> vanish and are not represented.
    """
    _require(params.reservoir.kind is ReservoirKind.BAND_EDGE,
             "pbg_noise_correlations needs the band-edge model")
    N1 = float(noise_strength(float(omega1), params))
    return NoiseCorrelations(
        minus_plus_stationary=0.5 * N1,
        zz_stationary=N1,
        zz_mean_sz=N1,
        minus_z_mean_sm=N1,
        z_plus_mean_sp=N1,
        at_frequency=float(omega1),
    )


def pbg_spectrum(omega, params: PhysicalParams):
    """Band-edge spectrum under resonant driving.

    Returns (coherent_weight, s_inc) with

        weight = 4 pi^2 Omega^2 f0 g0 Gp0^2 / D0^2
        s_inc  = N(w) [pi O^4 + i O^3 g(-w) S_- - i O^3 f(w) S_+
                       + O^2 f(w) g(-w) (2 pi + S_z)] / (D(w) D(-w))

    where S_x = 2 pi <sigma_x> are the transformed steady means. The
    profile vanishes identically below the band edge at omega_c - omega_a.
    """
    _require(params.reservoir.kind is ReservoirKind.BAND_EDGE,
             "pbg_spectrum needs the band-edge model")
    if params.delta != 0.0:
        raise UnsupportedModelError("band-edge spectrum is defined for resonant driving only")
    w = np.asarray(omega, dtype=float)
    O = params.rabi
    ss = steady_state(params)
    f0, g0, _ = shorthand(0.0, params)
    gp0 = complex(memory_kernel(0.0, params)) + complex(memory_kernel_conj(0.0, params))
    D0 = denominator(0.0, params)
    weight_c = 4.0 * math.pi ** 2 * O ** 2 * f0 * g0 * gp0 ** 2 / D0 ** 2
    weight = float(weight_c.real)

    f_w = shorthand(w, params).f
    g_m = shorthand(-w, params).g
    Dw = denominator(w, params)
    Dm = denominator(-w, params)
    N = noise_strength(w, params)
    Sm = 2.0 * math.pi * ss.sm
    Sp = 2.0 * math.pi * ss.sp
    Sz = 2.0 * math.pi * ss.sz
    num = (math.pi * O ** 4
           + 1.0j * O ** 3 * g_m * Sm
           - 1.0j * O ** 3 * f_w * Sp
           + O ** 2 * f_w * g_m * (2.0 * math.pi + Sz))
    s = N * num / (Dw * Dm)
    return weight, np.asarray(s).real if np.ndim(omega) else float(np.real(s))


# ---------------------------------------------------------------------------
# grids, results, integration


@dataclass
class SpectrumResult:
    """A sampled incoherent profile plus the separate elastic weight."""

    omega: np.ndarray
    s_inc: np.ndarray
    coherent_weight: float
    unit: str
    kind: str
    params: PhysicalParams | None = None
    meta: dict = field(default_factory=dict)


def build_grid(lo: float, hi: float, *, centers=(), widths=(), edge: float | None = None,
               base_points: int = 801, cluster_points: int = 48,
               edge_points: int = 64, edge_inner: float = 1e-7) -> np.ndarray:
    """Non-uniform frequency grid densified near peaks and the band edge.

    Peak clusters are geometric in the distance from each center, from
    width/64 out to 8 widths. The edge cluster reaches down to
    ``edge_inner`` above the edge so the square-root onset is resolved.
    """
    if not hi > lo:
        raise ValueError(f"grid needs hi > lo, got [{lo}, {hi}]")
    parts = [np.linspace(lo, hi, base_points)]
    for c, wd in zip(centers, widths):
        if wd <= 0:
            continue
        offs = wd * np.geomspace(1.0 / 64.0, 8.0, cluster_points)
        parts.append(c - offs)
        parts.append(np.array([c]))
        parts.append(c + offs)
    if edge is not None and lo <= edge <= hi:
        span_up = hi - edge
        if span_up > edge_inner:
            parts.append(edge + np.geomspace(edge_inner, span_up, edge_points))
        parts.append(np.array([edge]))
    grid = np.unique(np.concatenate(parts))
    return grid[(grid >= lo) & (grid <= hi)]


def _evaluate(params: PhysicalParams, w: np.ndarray) -> tuple[float, np.ndarray]:
    if params.reservoir.kind is ReservoirKind.FREE_SPACE:
        return free_space_spectrum(w, params)
    return pbg_spectrum(w, params)


def _auto_grid(params: PhysicalParams, ss_z: float, tail_tol: float) -> np.ndarray:
    O = params.rabi
    if params.reservoir.kind is ReservoirKind.FREE_SPACE:
        gam = params.reservoir.gamma
        ogen = math.hypot(O, params.delta)
        A = 0.5 * O ** 2 + params.delta ** 2 + 0.25 * gam ** 2
        total_scale = max(2.0 * math.pi ** 2 * (1.0 + ss_z), 1e-6)
        # s_inc falls off like pi*Gamma*O^4/(2*A*w^4); solve the tail bound
        W = max(3.0 * ogen + 30.0 * gam, 10.0 * gam)
        while math.pi * gam * O ** 4 / (6.0 * A * W ** 3) > tail_tol * total_scale and W < 1e9:
            W *= 1.5
        return build_grid(-W, W, centers=(-ogen, 0.0, ogen),
                          widths=(gam, gam, gam))
    geff = effective_gamma(params)
    edge = params.reservoir.omega_c - params.omega_a
    wd = max(geff, O / 200.0, 1e-6 * params.reservoir.beta)
    b32 = params.reservoir.beta ** 1.5
    total_scale = max(2.0 * math.pi ** 2 * (1.0 + ss_z), 1e-6)
    W = max(2.0 * O + 30.0 * geff, 6.0 * geff, 1.0 * params.reservoir.beta, 1.5 * O)
    # far tail of s_inc is ~ pi*b32*O^4 * w^(-6.5)
    while math.pi * b32 * O ** 4 * W ** -5.5 / 5.5 > tail_tol * total_scale and W < 1e9:
        W *= 1.5
    lo = max(edge - 0.1 * max(O, geff, params.reservoir.beta), -W)
    if edge <= -W:
        lo = -W
    return build_grid(lo, W, centers=(-O, 0.0, O), widths=(wd, wd, wd),
                      edge=edge, edge_inner=1e-7 * params.reservoir.beta)


def default_grid(params: PhysicalParams, *, tail_tol: float = 1e-8) -> np.ndarray:
    """The automatic grid compute_spectrum would start from."""
    return _auto_grid(params, steady_state(params).sz, tail_tol)


def compute_spectrum(params: PhysicalParams, omega: np.ndarray | None = None, *,
                     refine_tol: float = 1e-7, max_refine: int = 14,
                     tail_tol: float = 1e-8, refine: bool = True) -> SpectrumResult:
    """Evaluate the spectrum for either model on a converged grid.

    With no grid given, an automatic one is built that covers the support
    out to a truncation tolerance and is densified near the expected peaks
    and the band edge. The grid is then refined by midpoint insertion
    until the trapezoid integral of s_inc changes by less than
    ``refine_tol`` relatively. Negative samples within CLAMP_TOL of zero
    (relative to the maximum) are clamped, and counted in ``meta``.
    """
    ss = steady_state(params)
    if omega is None:
        w = _auto_grid(params, ss.sz, tail_tol)
    else:
        w = np.unique(np.asarray(omega, dtype=float))
    weight, s = _evaluate(params, w)
    n_rounds = 0
    if refine:
        last = np.trapezoid(s, w)
        for n_rounds in range(1, max_refine + 1):
            mids = 0.5 * (w[1:] + w[:-1])
            _, s_m = _evaluate(params, mids)
            w = np.concatenate([w, mids])
            order = np.argsort(w, kind="stable")
            w = w[order]
            s = np.concatenate([s, s_m])[order]
            cur = np.trapezoid(s, w)
            scale = max(abs(cur), abs(weight), 1e-300)
            if abs(cur - last) <= refine_tol * scale:
                break
            last = cur
    peak = float(np.max(s)) if s.size else 0.0
    clamp_floor = -CLAMP_TOL * max(peak, 1e-300)
    mask = (s < 0.0) & (s >= clamp_floor)
    n_clamped = int(np.count_nonzero(mask))
    if n_clamped:
        s = np.where(mask, 0.0, s)
    kind = params.reservoir.kind.value
    return SpectrumResult(
        omega=w, s_inc=s, coherent_weight=weight,
        unit=params.reservoir.unit_name, kind=kind, params=params,
        meta={"clamped": n_clamped, "refine_rounds": n_rounds,
              "steady_sz": ss.sz,
              "ill_conditioned": int(np.count_nonzero(ill_conditioned(w, params)))},
    )


def total_power(result: SpectrumResult) -> float:
    """Coherent weight plus the trapezoid integral of s_inc over the grid."""
    return float(result.coherent_weight + np.trapezoid(result.s_inc, result.omega))


@dataclass(frozen=True)
class Peak:
    location: float
    height: float
    fwhm: float
    power: float


@dataclass(frozen=True)
class PeakTable:
    peaks: tuple[Peak, ...]
    coherent_weight: float
    total_incoherent: float


def _half_crossing(w, s, i_peak, half, lo, hi, direction):
    """Linear-interpolated half-height crossing walking from the peak."""
    i = i_peak
    while lo <= i + direction <= hi:
        j = i + direction
        if s[j] <= half:
            if s[i] == s[j]:
                return w[j]
            t = (s[i] - half) / (s[i] - s[j])
            return w[i] + t * (w[j] - w[i])
        i = j
    return math.nan


def peak_analysis(result: SpectrumResult, prominence_frac: float = 0.01) -> PeakTable:
    """Locate peaks of s_inc with heights, widths, and integrated powers.

    Peak locations are refined parabolically from the three samples around
    each maximum; the FWHM comes from interpolated half-height crossings
    (NaN when a side never falls to half height inside the peak's
    segment). Powers integrate s_inc between the minima separating
    neighboring peaks.
    """
    w, s = result.omega, result.s_inc
    if s.size < 3:
        return PeakTable(peaks=(), coherent_weight=result.coherent_weight,
                         total_incoherent=0.0)
    smax = float(np.max(s))
    idx, _ = find_peaks(s, prominence=prominence_frac * smax)
    # segment boundaries at the minima between consecutive peaks
    bounds = [0]
    for a, b in zip(idx[:-1], idx[1:]):
        bounds.append(a + int(np.argmin(s[a:b + 1])))
    bounds.append(s.size - 1)
    peaks = []
    for k, i in enumerate(idx):
        lo_i, hi_i = bounds[k], bounds[k + 1]
        # parabolic refinement of location and height
        if 0 < i < s.size - 1 and s[i - 1] != s[i + 1]:
            denom = s[i - 1] - 2.0 * s[i] + s[i + 1]
            if denom != 0.0:
                shift = 0.5 * (s[i - 1] - s[i + 1]) / denom
                shift = float(np.clip(shift, -1.0, 1.0))
            else:
                shift = 0.0
            dw = 0.5 * (w[min(i + 1, s.size - 1)] - w[max(i - 1, 0)])
            loc = float(w[i] + shift * dw)
            height = float(s[i] - 0.25 * (s[i - 1] - s[i + 1]) * shift)
        else:
            loc, height = float(w[i]), float(s[i])
        half = 0.5 * height
        left = _half_crossing(w, s, i, half, lo_i, hi_i, -1)
        right = _half_crossing(w, s, i, half, lo_i, hi_i, +1)
        fwhm = right - left if math.isfinite(left) and math.isfinite(right) else math.nan
        power = float(np.trapezoid(s[lo_i:hi_i + 1], w[lo_i:hi_i + 1]))
        peaks.append(Peak(location=loc, height=height, fwhm=fwhm, power=power))
    return PeakTable(peaks=tuple(peaks), coherent_weight=result.coherent_weight,
                     total_incoherent=float(np.trapezoid(s, w)))


@dataclass(frozen=True)
class ScanRow:
    offset: float
    omega_a: float
    table: PeakTable | None
    power: float
    error: str | None = None


def offset_scan(params: PhysicalParams, offsets, *, threads: int = 1,
                prominence_frac: float = 0.01, **spectrum_kw) -> list[ScanRow]:
    """Sweep the atom-edge offset omega_a - omega_c at fixed drive.

    Each row carries the peak table and total power for one offset; a
    failing offset is recorded with its error message and the scan moves
    on. ``threads`` > 1 evaluates offsets concurrently.
    """
    _require(params.reservoir.kind is ReservoirKind.BAND_EDGE,
             "offset_scan needs the band-edge model")

    def run_one(off: float) -> ScanRow:
        wa = params.reservoir.omega_c + off
        try:
            p = PhysicalParams.make(wa, params.rabi, params.reservoir,
                                    delta=params.delta)
            res = compute_spectrum(p, **spectrum_kw)
            table = peak_analysis(res, prominence_frac=prominence_frac)
            return ScanRow(offset=float(off), omega_a=wa, table=table,
                           power=total_power(res))
        except Exception as exc:
            return ScanRow(offset=float(off), omega_a=wa, table=None,
                           power=math.nan, error=f"{type(exc).__name__}: {exc}")

    offsets = [float(o) for o in offsets]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_one, offsets))
    return [run_one(o) for o in offsets]

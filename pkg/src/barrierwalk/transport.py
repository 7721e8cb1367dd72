"""Ballistic peak tracking and barrier estimation from walk speed.

Stationary-phase analysis of ``exp(-i t (omega_k + k n/t))`` puts the
leading probability peak at ``n = +-alpha t / sqrt(2)``.  The helpers here
track the simulated peak, fit its speed, and invert the speed back to the
barrier amplitude ``alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import InsufficientData, SlopeOutOfRange
from .momentum import SQRT2, _dispersion
from .walk import BarrierParams, InitialState, ShiftKind, new_field, step

__all__ = [
    "PeakTrace",
    "estimate_alpha",
    "fit_slope",
    "fit_trace",
    "phase",
    "phase_derivatives",
    "predicted_peak",
    "track_peaks",
]

SIDES = ("right", "left", "either")
TIE_TOL = 1e-12
SLOPE_SLACK = 0.02


def phase(k, alpha: float, nu: float):
    """``omega_k + k * nu`` with ``nu = n / t``."""
    return _dispersion(k, alpha)[0] + k * nu


def phase_derivatives(k, alpha: float, nu: float):
    """First and second ``k``-derivatives of :func:`phase` in closed form."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    cos_k = np.cos(k)
    gap = 2.0 - alpha**2 * cos_k**2
    d1 = alpha * np.sin(k) / np.sqrt(gap) + nu
    d2 = alpha * cos_k * (2.0 - alpha**2) / gap**1.5
    return d1, d2


def predicted_peak(alpha: float, t: int) -> float:
    """Right-hand peak position ``alpha t / sqrt(2)``; the left one is its negative."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    return alpha * t / SQRT2


@dataclass(frozen=True)
class PeakTrace:
    """Peak position per step.

    ``slope``, ``window`` and ``residual_rms`` stay ``None`` until the
    trace is passed through :func:`fit_trace`.
    """

    t: np.ndarray
    n_peak: np.ndarray
    p_peak: np.ndarray
    side: str = "right"
    slope: float | None = None
    window: tuple[int, int] | None = None
    residual_rms: float | None = None

    def __len__(self):
        return len(self.t)


def _pick_peak(positions: np.ndarray, probs: np.ndarray, side: str) -> tuple[int, float]:
    if side == "right":
        mask = positions >= 0
    elif side == "left":
        mask = positions <= 0
    else:
        mask = np.ones_like(positions, dtype=bool)
    pos, p = positions[mask], probs[mask]
    p_max = p.max()
    cands = pos[p >= p_max - TIE_TOL]
    if side == "right":
        n = cands.max()
    elif side == "left":
        n = cands.min()
    else:
        # farthest from the origin, positive side on a tie
        n = max(cands, key=lambda c: (abs(c), c))
    return int(n), float(probs[positions == n][0])


def track_peaks(
    kind: ShiftKind = ShiftKind.FLIP_FLOP,
    barriers: BarrierParams | None = None,
    t_max: int = 500,
    side: str = "right",
) -> PeakTrace:
    """Global probability maximum on ``side`` after each of ``1..t_max`` steps.

    The walk starts left-localized at the origin.  Equal maxima (within
    ``1e-12``) resolve toward the leading edge.
    """
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")

    field = new_field(t_max, InitialState.LEFT_LOCALIZED)
    positions = field.positions
    ts, ns, ps = [], [], []
    for t in range(1, t_max + 1):
        field = step(field, kind, barriers)
        n, p = _pick_peak(positions, field.probability_array(), side)
        ts.append(t)
        ns.append(n)
        ps.append(p)
    return PeakTrace(np.array(ts), np.array(ns), np.array(ps), side=side)


def _fit(trace: PeakTrace, t_min: int):
    sel = trace.t >= t_min
    if np.count_nonzero(sel) < 10:
        raise InsufficientData(
            f"need >= 10 trace entries with t >= {t_min}, have {np.count_nonzero(sel)}"
        )
    t = trace.t[sel].astype(float)
    n = trace.n_peak[sel].astype(float)
    slope, intercept = np.polyfit(t, n, 1)
    rms = float(np.sqrt(np.mean((n - (slope * t + intercept)) ** 2)))
    return float(slope), (int(trace.t[sel][0]), int(trace.t[sel][-1])), rms


def fit_slope(trace: PeakTrace, t_min: int = 50) -> float:
    """Least-squares slope of ``n_peak`` against ``t`` for ``t >= t_min``."""
    return _fit(trace, t_min)[0]


def fit_trace(trace: PeakTrace, t_min: int = 50) -> PeakTrace:
    slope, window, rms = _fit(trace, t_min)
    return replace(trace, slope=slope, window=window, residual_rms=rms)


def estimate_alpha(slope: float) -> BarrierParams:
    """Barrier parameters implied by a peak speed of ``slope`` sites per step.

    The speed is ``alpha / sqrt(2)``; ``alpha`` is clamped into ``[0, 1]``
    so that small overshoots from lattice rounding are tolerated.

    Raises
    ------
    SlopeOutOfRange
        If ``slope`` exceeds ``1/sqrt(2)`` (or falls below 0) by more than 0.02.
    """
    if math.isnan(slope) or slope > 1 / SQRT2 + SLOPE_SLACK or slope < -SLOPE_SLACK:
        raise SlopeOutOfRange(
            f"speed {slope!r} outside [0, 1/sqrt(2)]: not a barrier walk"
        )
    alpha = min(max(SQRT2 * slope, 0.0), 1.0)
    return BarrierParams.from_alpha(alpha)

"""Profile metrics: fringe spacing, centroid, visibility, mirror correlation."""
from __future__ import annotations

import math

import numpy as np
from scipy.signal import find_peaks

from ..field_grid import IntensityProfile

__all__ = [
    "AnalysisError",
    "fringe_peaks",
    "fringe_spacing",
    "centroid",
    "visibility",
    "half_maxima",
    "brighter_side",
    "mirror_correlation",
]


class AnalysisError(ValueError):
    pass


def fringe_peaks(p: IntensityProfile, min_height: float = 0.5) -> np.ndarray:
    """Sub-sample positions of local maxima above ``min_height * max``.

    Each maximum is refined by fitting a parabola through it and its two
    neighbours.
    """
    v = p.values
    vmax = float(v.max())
    if vmax <= 0:
        return np.empty(0)
    # prominence floor rejects round-off ripple on smooth slopes
    idx, _ = find_peaks(v, height=min_height * vmax, prominence=1e-6 * vmax)
    a, b, c = v[idx - 1], v[idx], v[idx + 1]
    denom = a - 2 * b + c
    shift = np.where(denom != 0, 0.5 * (a - c) / np.where(denom != 0, denom, 1), 0.0)
    return p.positions[idx] + shift * p.spacing


def fringe_spacing(p: IntensityProfile, min_height: float = 0.5) -> float:
    """Mean distance between consecutive qualifying maxima.

    Raises
    ------
    AnalysisError
        fewer than three maxima above ``min_height`` of the global maximum
    """
    peaks = fringe_peaks(p, min_height)
    if peaks.size < 3:
        raise AnalysisError(
            f"need at least 3 maxima above {min_height:g} of the peak, found {peaks.size}"
        )
    return float(np.mean(np.diff(peaks)))


def centroid(p: IntensityProfile) -> float:
    total = float(p.values.sum())
    if total <= 0:
        raise AnalysisError("centroid of an all-zero profile")
    return float(np.dot(p.positions, p.values) / total)


def visibility(p: IntensityProfile) -> float:
    """``(Imax - Imin) / (Imax + Imin)`` around the global maximum.

    ``Imin`` is the mean of the two local minima flanking the brightest
    sample.
    """
    v = p.values
    i0 = int(np.argmax(v))
    lo = i0
    while lo > 0 and v[lo - 1] <= v[lo]:
        lo -= 1
    hi = i0
    while hi < v.size - 1 and v[hi + 1] <= v[hi]:
        hi += 1
    if lo == 0 or hi == v.size - 1:
        raise AnalysisError("global maximum is not flanked by two minima")
    imax = v[i0]
    imin = 0.5 * (v[lo] + v[hi])
    if imax + imin == 0:
        raise AnalysisError("visibility of an all-zero profile")
    return float((imax - imin) / (imax + imin))


def half_maxima(p: IntensityProfile) -> tuple[float, float]:
    """Peak intensity below and above the axis, ``(lower, upper)``."""
    lower = p.values[p.positions < 0]
    upper = p.values[p.positions > 0]
    return float(lower.max(initial=0.0)), float(upper.max(initial=0.0))


def brighter_side(p: IntensityProfile) -> int:
    """+1 when the strongest peak is above the axis, -1 below, 0 on a tie."""
    lower, upper = half_maxima(p)
    return int(np.sign(upper - lower))


def mirror_correlation(
    a: IntensityProfile, b: IntensityProfile, scale: float = 1.0
) -> tuple[float, float]:
    """Pearson correlation of ``a`` with ``b`` and with ``b`` mirrored.

    ``b``'s axis is divided by ``scale`` first (use the wavelength ratio to
    compare patterns of different colours shape-to-shape). Both are compared
    on ``a``'s samples over the range where ``b(y)`` and ``b(-y)`` are known;
    ``b`` is linearly interpolated.

    Returns
    -------
    (direct, mirrored) : tuple of float
    """
    if not math.isclose(a.plane_distance, b.plane_distance, rel_tol=1e-12, abs_tol=0.0):
        raise AnalysisError(
            f"profiles come from different planes ({a.plane_distance} m vs {b.plane_distance} m)"
        )
    if not scale > 0:
        raise ValueError("scale must be positive")
    yb = b.positions / scale
    lo = max(a.positions[0], yb[0], -yb[-1])
    hi = min(a.positions[-1], yb[-1], -yb[0])
    keep = (a.positions >= lo) & (a.positions <= hi)
    y = a.positions[keep]
    if y.size < 3:
        raise AnalysisError("profiles do not overlap")
    va = a.values[keep]
    direct = np.interp(y, yb, b.values)
    mirrored = np.interp(-y, yb, b.values)
    return _pearson(va, direct), _pearson(va, mirrored)


def _pearson(u: np.ndarray, v: np.ndarray) -> float:
    du, dv = u - u.mean(), v - v.mean()
    nu, nv = math.sqrt(float(np.dot(du, du))), math.sqrt(float(np.dot(dv, dv)))
    if nu == 0 or nv == 0:
        raise AnalysisError("correlation undefined for a zero-variance profile")
    return float(np.clip(np.dot(du, dv) / (nu * nv), -1.0, 1.0))

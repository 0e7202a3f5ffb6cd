"""Sources and amplitude masks for the optical bench."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field_grid import ComplexField, GridSpec

__all__ = [
    "UndersamplingError",
    "MaskExtentError",
    "DoubleSlitSpec",
    "KnifeEdgeSpec",
    "gaussian_source",
    "plane_wave",
    "double_slit_mask",
    "apply_double_slit",
    "apply_knife_edge",
]


class UndersamplingError(ValueError):
    pass


class MaskExtentError(ValueError):
    pass


_EDGE_TOL = 1e-6  # in units of the grid pitch


@dataclass(frozen=True)
class DoubleSlitSpec:
    """Two horizontal slits stacked vertically, symmetric about the axis.

    ``transmissions[0]`` belongs to the upper slit (y > 0). ``edge_gap`` is the
    edge-to-edge separation; set ``center_spacing`` instead to give the
    center-to-center distance.
    """

    slit_width: float
    edge_gap: float = 0.0
    transmissions: tuple[float, float] = (1.0, 1.0)
    slit_length: float = 5e-3
    center_spacing: float | None = None

    def __post_init__(self):
        if self.slit_width <= 0:
            raise ValueError("slit_width must be positive")
        if self.slit_length <= 0:
            raise ValueError("slit_length must be positive")
        if self.center_spacing is not None:
            gap = self.center_spacing - self.slit_width
            if gap < 0:
                raise ValueError("center_spacing smaller than slit_width: slits overlap")
            object.__setattr__(self, "edge_gap", float(gap))
            object.__setattr__(self, "center_spacing", None)
        if self.edge_gap < 0:
            raise ValueError("edge_gap must be >= 0")
        t = tuple(float(v) for v in self.transmissions)
        if len(t) != 2 or not all(0.0 <= v <= 1.0 for v in t):
            raise ValueError("transmissions must be two values in [0, 1]")
        object.__setattr__(self, "transmissions", t)

    @property
    def spacing(self) -> float:
        """Center-to-center distance."""
        return self.slit_width + self.edge_gap

    @property
    def half_height(self) -> float:
        return self.slit_width + self.edge_gap / 2


@dataclass(frozen=True)
class KnifeEdgeSpec:
    edge_position: float = 0.0
    covered_side: str = "below"

    def __post_init__(self):
        if self.covered_side not in ("above", "below"):
            raise ValueError("covered_side must be 'above' or 'below'")


def gaussian_source(
    grid: GridSpec,
    waist: float,
    wavelength: float,
    amplitude: float = 1.0,
    waist_x: float | None = None,
) -> ComplexField:
    """Flat-phase Gaussian ``amplitude * exp(-x^2/wx^2 - y^2/w^2)`` on axis.

    ``waist`` is the 1/e amplitude (1/e^2 intensity) radius; ``waist_x``
    overrides it horizontally for elliptical beams.
    """
    wy = float(waist)
    wx = wy if waist_x is None else float(waist_x)
    if wy <= 0 or wx <= 0:
        raise ValueError("waist must be positive")
    if wy < 4 * grid.dy or wx < 4 * grid.dx:
        raise UndersamplingError(
            f"waist ({wx:.3g}, {wy:.3g}) m below 4 samples at spacing ({grid.dx:.3g}, {grid.dy:.3g}) m"
        )
    X, Y = grid.mesh()
    return ComplexField(grid, amplitude * np.exp(-(X / wx) ** 2 - (Y / wy) ** 2), wavelength)


def plane_wave(grid: GridSpec, wavelength: float, amplitude: float = 1.0) -> ComplexField:
    return ComplexField(grid, np.full(grid.shape, amplitude, dtype=np.complex128), wavelength)


def double_slit_mask(grid: GridSpec, spec: DoubleSlitSpec) -> np.ndarray:
    """Real transmission array for ``spec``; hard edges, no anti-aliasing.

    Samples lying on a slit edge count as open, so the mask is symmetric
    under ``y -> -y`` whenever the transmissions are equal.
    """
    ext_x, ext_y = grid.extent
    if 2 * spec.half_height > ext_y:
        raise MaskExtentError(
            f"double slit spans {2 * spec.half_height:.4g} m, grid height is {ext_y:.4g} m"
        )
    X, Y = grid.mesh()
    c = spec.spacing / 2
    # round-off guard so edges landing on a sample are not decided by noise
    tx, ty = _EDGE_TOL * grid.dx, _EDGE_TOL * grid.dy
    half = spec.slit_width / 2 + ty
    along = np.abs(X) <= spec.slit_length / 2 + tx
    upper = (np.abs(Y - c) <= half) & along
    lower = (np.abs(Y + c) <= half) & along
    t1, t2 = spec.transmissions
    # with no gap the slits share an edge row; the upper slit owns it
    return np.where(upper, t1, np.where(lower, t2, 0.0))


def apply_double_slit(f: ComplexField, spec: DoubleSlitSpec) -> ComplexField:
    return ComplexField(f.grid, f.amplitude * double_slit_mask(f.grid, spec), f.wavelength)


def apply_knife_edge(f: ComplexField, spec: KnifeEdgeSpec) -> ComplexField:
    """Zero the field on the covered side of a horizontal blade edge."""
    Y = f.grid.y[:, None]
    tol = _EDGE_TOL * f.grid.dy
    if spec.covered_side == "below":
        keep = Y >= spec.edge_position - tol
    else:
        keep = Y <= spec.edge_position + tol
    return ComplexField(f.grid, np.where(keep, f.amplitude, 0), f.wavelength)

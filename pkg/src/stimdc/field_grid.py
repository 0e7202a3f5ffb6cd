"""Sampled complex scalar fields on transverse planes.

All lengths are SI meters. Arrays are indexed ``[iy, ix]`` and the optical
axis sits at index ``(ny // 2, nx // 2)``, so coordinate ``(j - n/2) * d``
belongs to sample ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GridError",
    "GridSpec",
    "ComplexField",
    "IntensityMap",
    "IntensityProfile",
    "new_field",
    "total_power",
    "conjugate_field",
    "multiply_fields",
    "retag",
    "intensity_map",
    "vertical_profile",
    "mirror_array",
    "mirror_field",
    "resample_to_grid",
]


class GridError(ValueError):
    """Invalid grid dimensions or mismatched grids."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform transverse lattice centered on the optical axis.

    Parameters
    ----------
    nx, ny : int
        point counts; both even and at least 2
    dx, dy : float
        sample spacing in meters
    """

    nx: int
    ny: int
    dx: float
    dy: float

    def __post_init__(self):
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if int(n) != n or n < 2 or n % 2:
                raise GridError(f"{name} must be an even integer >= 2, got {n!r}")
            object.__setattr__(self, name, int(n))
        for name in ("dx", "dy"):
            d = getattr(self, name)
            if not np.isfinite(d) or d <= 0:
                raise GridError(f"{name} must be a positive finite spacing, got {d!r}")
            object.__setattr__(self, name, float(d))

    @classmethod
    def square(cls, n: int, d: float) -> GridSpec:
        return cls(n, n, d, d)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def extent(self) -> tuple[float, float]:
        """Physical size ``(nx*dx, ny*dy)``."""
        return (self.nx * self.dx, self.ny * self.dy)

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.nx) - self.nx // 2) * self.dx

    @property
    def y(self) -> np.ndarray:
        return (np.arange(self.ny) - self.ny // 2) * self.dy

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcastable ``(X, Y)`` coordinate arrays of shapes (1, nx) and (ny, 1)."""
        return self.x[None, :], self.y[:, None]

    def rho2(self) -> np.ndarray:
        X, Y = self.mesh()
        return X**2 + Y**2


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex amplitude samples on a grid, tagged with a wavelength.

    The amplitude array is copied on construction and made read-only; every
    operation in this package returns a new field.
    """

    grid: GridSpec
    amplitude: np.ndarray
    wavelength: float

    def __post_init__(self):
        a = np.array(self.amplitude, dtype=np.complex128)
        if a.shape != self.grid.shape:
            raise GridError(
                f"amplitude shape {a.shape} does not match grid shape {self.grid.shape}"
            )
        if not np.isfinite(self.wavelength) or self.wavelength <= 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength!r}")
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitude contains non-finite samples")
        a.flags.writeable = False
        object.__setattr__(self, "amplitude", a)
        object.__setattr__(self, "wavelength", float(self.wavelength))

    @property
    def k(self) -> float:
        return 2 * np.pi / self.wavelength

    @property
    def intensity(self) -> np.ndarray:
        return np.abs(self.amplitude) ** 2


@dataclass(frozen=True, eq=False)
class IntensityMap:
    """Real 2-D intensity at a detection plane ``plane_distance`` from the crystal."""

    grid: GridSpec
    values: np.ndarray
    plane_distance: float

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise GridError(f"values shape {v.shape} does not match grid {self.grid.shape}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True, eq=False)
class IntensityProfile:
    """Intensity along the vertical axis of a detection plane."""

    positions: np.ndarray
    values: np.ndarray
    plane_distance: float
    wavelength: float | None = field(default=None)

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        val = np.array(self.values, dtype=float)
        if pos.ndim != 1 or pos.shape != val.shape:
            raise ValueError("positions and values must be 1-D arrays of equal length")
        if pos.size < 2:
            raise ValueError("a profile needs at least two samples")
        step = np.diff(pos)
        if np.any(step <= 0):
            raise ValueError("positions must be strictly increasing")
        if not np.allclose(step, step[0], rtol=1e-6, atol=0):
            raise ValueError("positions must be uniformly spaced")
        if np.any(val < 0):
            raise ValueError("intensity values must be nonnegative")
        pos.flags.writeable = False
        val.flags.writeable = False
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "values", val)

    @property
    def spacing(self) -> float:
        return float(self.positions[1] - self.positions[0])


def new_field(grid: GridSpec, fill: complex = 1.0, wavelength: float = 1e-6) -> ComplexField:
    """Uniform field equal to ``fill`` everywhere."""
    return ComplexField(grid, np.full(grid.shape, fill, dtype=np.complex128), wavelength)


def total_power(f: ComplexField) -> float:
    """Return ``sum(|u|^2) * dx * dy``."""
    return float(np.sum(np.abs(f.amplitude) ** 2) * f.grid.dx * f.grid.dy)


def conjugate_field(f: ComplexField) -> ComplexField:
    return ComplexField(f.grid, np.conj(f.amplitude), f.wavelength)


def retag(f: ComplexField, wavelength: float) -> ComplexField:
    """Same samples, new wavelength tag."""
    return ComplexField(f.grid, f.amplitude, wavelength)


def multiply_fields(a: ComplexField, b: ComplexField, out_wavelength: float) -> ComplexField:
    """Pointwise product of two fields on the same grid, tagged ``out_wavelength``."""
    if a.grid != b.grid:
        raise GridError(f"grid mismatch: {a.grid} vs {b.grid}")
    return ComplexField(a.grid, a.amplitude * b.amplitude, out_wavelength)


def intensity_map(f: ComplexField, plane_distance: float) -> IntensityMap:
    return IntensityMap(f.grid, f.intensity, plane_distance)


def vertical_profile(
    f: ComplexField | IntensityMap, plane_distance: float | None = None
) -> IntensityProfile:
    """Intensity along the central column (``x = 0``) of a field or intensity map.

    For an :class:`IntensityMap` the plane distance defaults to the map's own.
    """
    if isinstance(f, IntensityMap):
        values = f.values[:, f.grid.nx // 2]
        dist = f.plane_distance if plane_distance is None else plane_distance
        wavelength = None
    else:
        if plane_distance is None:
            raise TypeError("plane_distance is required for a ComplexField")
        values = np.abs(f.amplitude[:, f.grid.nx // 2]) ** 2
        dist = plane_distance
        wavelength = f.wavelength
    return IntensityProfile(f.grid.y, values, dist, wavelength)


def mirror_array(a: np.ndarray) -> np.ndarray:
    """Point reflection ``rho -> -rho`` on the centered lattice.

    Index ``j`` (coordinate ``(j - n/2) d``) maps to ``(n - j) mod n``; the
    unpaired edge row/column ``j = 0`` maps to itself.
    """
    out = np.asarray(a)
    for axis in range(out.ndim):
        out = np.roll(np.flip(out, axis=axis), 1, axis=axis)
    return out


def mirror_field(f: ComplexField) -> ComplexField:
    return ComplexField(f.grid, mirror_array(f.amplitude), f.wavelength)


def _sinc_matrix(x_out: np.ndarray, x_in: np.ndarray, d: float) -> np.ndarray:
    return np.sinc((x_out[:, None] - x_in[None, :]) / d)


def resample_to_grid(f: ComplexField, grid: GridSpec) -> ComplexField:
    """Band-limited (sinc) interpolation of ``f`` onto another lattice.

    Output samples outside the input extent decay to zero. The matrices are
    dense, so this is meant for grids of a few thousand points per axis.
    """
    my = _sinc_matrix(grid.y, f.grid.y, f.grid.dy)
    mx = _sinc_matrix(grid.x, f.grid.x, f.grid.dx)
    return ComplexField(grid, my @ f.amplitude @ mx.T, f.wavelength)

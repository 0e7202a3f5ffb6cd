"""Paraxial free-space propagation, thin lens, and a brute-force Fresnel oracle.

The FFT propagators zero-pad each axis (factor 2 by default), convolve with the
Fresnel kernel ``exp(ikz) / (i lambda z) * exp(i pi rho^2 / (lambda z))`` and
crop back to the input grid. The kernel is separable, so the sampling regime
is resolved independently per axis.
"""
from __future__ import annotations

import enum
import warnings
from typing import NamedTuple

import numpy as np
import scipy.fft as sfft

from .field_grid import ComplexField, GridSpec

__all__ = [
    "PropagationMethod",
    "SamplingWarning",
    "RegimeCheck",
    "resolve_method",
    "propagate_fresnel",
    "propagate_fraunhofer",
    "apply_thin_lens",
    "fresnel_direct_quadrature",
    "fraunhofer_validity",
    "FRAUNHOFER_RATIO_LIMIT",
]

FRAUNHOFER_RATIO_LIMIT = 0.1


class PropagationMethod(str, enum.Enum):
    TRANSFER_FUNCTION = "tf"
    IMPULSE_RESPONSE = "ir"
    AUTO = "auto"

    @classmethod
    def coerce(cls, value) -> PropagationMethod:
        if isinstance(value, cls):
            return value
        aliases = {"transfer_function": "tf", "impulse_response": "ir"}
        return cls(aliases.get(value, value))


class SamplingWarning(UserWarning):
    """A forced propagation method is used outside its sampling regime."""


class RegimeCheck(NamedTuple):
    ratio: float
    is_fraunhofer: bool


def _check_distance(z: float) -> float:
    if not np.isfinite(z) or z <= 0:
        raise ValueError(f"propagation distance must be positive, got {z!r}")
    return float(z)


def _axis_method(d: float, n_pad: int, wavelength: float, z: float) -> PropagationMethod:
    # critical sampling d^2 = lambda z / N on the padded window
    if d * d >= wavelength * z / n_pad:
        return PropagationMethod.TRANSFER_FUNCTION
    return PropagationMethod.IMPULSE_RESPONSE


def resolve_method(
    grid: GridSpec, wavelength: float, z: float, method="auto", pad: int = 2
) -> tuple[PropagationMethod, PropagationMethod]:
    """Concrete ``(y_method, x_method)`` for a propagation.

    A forced method that violates the critical-sampling condition on an axis
    emits :class:`SamplingWarning`.
    """
    method = PropagationMethod.coerce(method)
    out = []
    for axis, n, d in (("y", grid.ny, grid.dy), ("x", grid.nx, grid.dx)):
        natural = _axis_method(d, pad * n, wavelength, z)
        if method is PropagationMethod.AUTO:
            out.append(natural)
            continue
        if method is not natural:
            warnings.warn(
                f"{method.name.lower()} propagation on axis {axis} outside its sampling "
                f"regime (d^2={d * d:.3g}, lambda z/N={wavelength * z / (pad * n):.3g})",
                SamplingWarning,
                stacklevel=3,
            )
        out.append(method)
    return tuple(out)


def _axis_kernel(n_pad: int, d: float, wavelength: float, z: float, method) -> np.ndarray:
    """Frequency-domain 1-D kernel in FFT order, without the exp(ikz) piston."""
    if method is PropagationMethod.TRANSFER_FUNCTION:
        f = sfft.fftfreq(n_pad, d)
        return np.exp(-1j * np.pi * wavelength * z * f**2)
    x = (np.arange(n_pad) - n_pad // 2) * d
    h = np.exp(1j * np.pi * x**2 / (wavelength * z)) * (d / np.sqrt(1j * wavelength * z))
    return sfft.fft(sfft.ifftshift(h))


def propagate_fresnel(
    f: ComplexField, z: float, method="auto", pad: int = 2
) -> ComplexField:
    """Propagate ``f`` a distance ``z`` at its own wavelength.

    Parameters
    ----------
    f : ComplexField
        input field
    z : float
        propagation distance, meters, > 0
    method : PropagationMethod or {'auto', 'tf', 'ir'}
        transfer-function or impulse-response convolution; ``auto`` picks per
        axis from the critical-sampling condition ``d^2 = lambda z / N``
    pad : int
        zero-padding factor per axis; ``pad=1`` gives periodic (wrap-around)
        propagation

    Returns
    -------
    ComplexField
        field at plane ``z`` on the input grid
    """
    z = _check_distance(z)
    if int(pad) != pad or pad < 1:
        raise ValueError(f"pad must be a positive integer, got {pad!r}")
    pad = int(pad)
    g = f.grid
    my, mx = resolve_method(g, f.wavelength, z, method, pad)
    npy, npx = pad * g.ny, pad * g.nx
    oy, ox = (npy - g.ny) // 2, (npx - g.nx) // 2

    buf = np.zeros((npy, npx), dtype=np.complex128)
    buf[oy:oy + g.ny, ox:ox + g.nx] = f.amplitude
    spec = sfft.fft2(buf, overwrite_x=True)
    spec *= _axis_kernel(npy, g.dy, f.wavelength, z, my)[:, None]
    spec *= _axis_kernel(npx, g.dx, f.wavelength, z, mx)[None, :]
    out = sfft.ifft2(spec, overwrite_x=True)[oy:oy + g.ny, ox:ox + g.nx]
    out *= np.exp(1j * f.k * z)
    return ComplexField(g, out, f.wavelength)


def propagate_fraunhofer(f: ComplexField, z: float) -> ComplexField:
    """Far-field pattern at distance ``z`` as a scaled Fourier transform.

    The output lattice has spacing ``lambda z / (N d)`` per axis and carries the
    quadratic phase and ``1 / (i lambda z)`` prefactor, so power is conserved.
    """
    z = _check_distance(z)
    g = f.grid
    lz = f.wavelength * z
    out_grid = GridSpec(g.nx, g.ny, lz / (g.nx * g.dx), lz / (g.ny * g.dy))
    u = sfft.fftshift(sfft.fft2(sfft.ifftshift(f.amplitude)))
    u *= g.dx * g.dy / (1j * lz)
    u *= np.exp(1j * f.k * z) * np.exp(1j * np.pi * out_grid.rho2() / lz)
    return ComplexField(out_grid, u, f.wavelength)


def apply_thin_lens(f: ComplexField, focal_length: float) -> ComplexField:
    """Multiply by ``exp(-i k rho^2 / 2 f)``; ``focal_length=inf`` is a no-op."""
    if focal_length == 0 or np.isnan(focal_length):
        raise ValueError(f"focal length must be nonzero, got {focal_length!r}")
    if np.isinf(focal_length):
        return ComplexField(f.grid, f.amplitude, f.wavelength)
    phase = np.exp(-1j * f.k * f.grid.rho2() / (2 * focal_length))
    return ComplexField(f.grid, f.amplitude * phase, f.wavelength)


def fresnel_direct_quadrature(
    f: ComplexField, z: float, targets, chunk: int = 4096
) -> np.ndarray:
    """Fresnel integral at arbitrary points by direct summation over all samples.

    ``targets`` is an ``(M, 2)`` array of ``(x, y)`` positions. The quadratic
    phase factorizes into x and y parts, so each target costs one
    ``ny x nx`` contraction; there is no FFT anywhere on this path. Intended
    for grids up to about 256^2.
    """
    z = _check_distance(z)
    pts = np.atleast_2d(np.asarray(targets, dtype=float))
    if pts.shape[-1] != 2:
        raise ValueError("targets must have shape (M, 2)")
    if not np.all(np.isfinite(pts)):
        raise ValueError("targets must be finite")
    g = f.grid
    lz = f.wavelength * z
    pref = np.exp(1j * f.k * z) / (1j * lz) * g.dx * g.dy
    x, y = g.x, g.y
    out = np.empty(len(pts), dtype=np.complex128)
    for start in range(0, len(pts), chunk):
        p = pts[start:start + chunk]
        cx = np.exp(1j * np.pi * (p[:, 0:1] - x[None, :]) ** 2 / lz)
        cy = np.exp(1j * np.pi * (p[:, 1:2] - y[None, :]) ** 2 / lz)
        out[start:start + chunk] = np.einsum("mj,mj->m", cy @ f.amplitude, cx)
    return pref * out


def fraunhofer_validity(aperture_radius: float, wavelength: float, z: float) -> RegimeCheck:
    """Ratio ``rho_max^2 / (lambda z)``; Fraunhofer when it is below 0.1."""
    if aperture_radius < 0 or wavelength <= 0 or z <= 0:
        raise ValueError("aperture radius must be >= 0; wavelength and z must be > 0")
    ratio = aperture_radius**2 / (wavelength * z)
    return RegimeCheck(float(ratio), bool(ratio < FRAUNHOFER_RATIO_LIMIT))

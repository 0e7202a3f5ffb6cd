"""Reference computations used by the tests.

Nothing here imports the package. Everything is a dense DFT, a dense
quadrature sum, or a closed form, so it shares no code path with the FFT
propagators.
"""
import numpy as np
from scipy import special


def fresnel_kernel_matrix(out_coords, in_coords, d, wavelength, z):
    """Dense 1-D Fresnel kernel ``exp(i pi (u - x)^2 / (lambda z)) d / sqrt(i lambda z)``."""
    diff = np.subtract.outer(np.asarray(out_coords), np.asarray(in_coords))
    return np.exp(1j * np.pi * diff**2 / (wavelength * z)) * d / np.sqrt(1j * wavelength * z)


def fresnel_quadrature(u, x, y, wavelength, z, x_out=None, y_out=None):
    """Direct Fresnel sum of ``u[iy, ix]``, including ``exp(ikz)``.

    The 2-D kernel factorizes, so the full sum is ``Ky @ u @ Kx.T``.
    """
    x_out = x if x_out is None else x_out
    y_out = y if y_out is None else y_out
    dx, dy = x[1] - x[0], y[1] - y[0]
    ky = fresnel_kernel_matrix(y_out, y, dy, wavelength, z)
    kx = fresnel_kernel_matrix(x_out, x, dx, wavelength, z)
    return np.exp(2j * np.pi * z / wavelength) * (ky @ u @ kx.T)


def centered_dft(u):
    """Dense 2-D DFT with the origin at index ``n // 2`` on both sides."""
    ny, nx = u.shape
    jy = np.arange(ny) - ny // 2
    jx = np.arange(nx) - nx // 2
    fy = np.exp(-2j * np.pi * np.outer(jy, jy) / ny)
    fx = np.exp(-2j * np.pi * np.outer(jx, jx) / nx)
    return fy @ u @ fx.T


def lattice_mirror_index(n):
    """Index map taking sample ``j`` (coordinate ``j - n//2``) to its negative."""
    c = np.arange(n) - n // 2
    return (n // 2 - c) % n


def gaussian_power(amplitude, wx, wy):
    """∫|A exp(-x²/wx² - y²/wy²)|² dx dy."""
    return np.pi * wx * wy * amplitude**2 / 2


def gaussian_radius(w0, wavelength, z):
    zr = np.pi * w0**2 / wavelength
    return w0 * np.sqrt(1 + (z / zr) ** 2)


def two_beam_visibility(t1, t2):
    return 2 * t1 * t2 / (t1**2 + t2**2)


def airy_encircled_energy(r, diameter, wavelength, f):
    """Fraction of a uniformly lit circular pupil's focal power inside radius ``r``."""
    v = np.pi * diameter * r / (wavelength * f)
    return 1 - special.j0(v) ** 2 - special.j1(v) ** 2


def airy_first_zero(diameter, wavelength, z):
    return special.jn_zeros(1, 1)[0] / np.pi * wavelength * z / diameter


def fresnel_strip_integral(width, wavelength, z):
    """∫_{-w/2}^{w/2} exp(i pi x² / (lambda z)) dx in closed form."""
    s = np.sqrt(2 / (wavelength * z))
    S, C = special.fresnel(width / 2 * s)
    return 2 * (C + 1j * S) / s


def two_slit_period(wavelength, z, center_spacing):
    return wavelength * z / center_spacing


def gaussian_fresnel_1d(u, w0, wavelength, z):
    """Closed-form 1-D Fresnel transform of ``exp(-x²/w0²)``, without ``exp(ikz)``.

    Uses ∫exp(-a x² - c (x-u)²) dx = sqrt(pi/(a+c)) exp(-a c u²/(a+c)) with
    ``c = -i pi / (lambda z)`` and the per-axis factor ``1/sqrt(i lambda z)``.
    """
    a = 1 / w0**2
    c = -1j * np.pi / (wavelength * z)
    return np.sqrt(np.pi / (a + c)) * np.exp(-a * c * np.asarray(u) ** 2 / (a + c)) / np.sqrt(
        1j * wavelength * z
    )

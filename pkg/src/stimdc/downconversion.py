"""Stimulated idler intensity from pump and auxiliary fields at the crystal.

The idler at a detection plane ``z`` is modeled as

    I(rho_i) = spontaneous_weight * integral |W_p|^2
               + |Fresnel_z[gain * W_p * conj(W_s)]|^2

with the Fresnel propagation carried out at the idler wavelength. The first
term has no transverse dependence and is added as a uniform background.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .field_grid import (
    ComplexField,
    GridError,
    IntensityMap,
    conjugate_field,
    multiply_fields,
    total_power,
)
from .propagation import propagate_fraunhofer, propagate_fresnel

__all__ = [
    "CrystalMixParams",
    "idler_source_field",
    "idler_intensity_at_plane",
    "stimulated_to_spontaneous_ratio",
    "spontaneous_weight_for_ratio",
]


@dataclass(frozen=True)
class CrystalMixParams:
    idler_wavelength: float = 925e-9
    gain: float = 1.0
    spontaneous_weight: float = 0.0

    def __post_init__(self):
        if not self.idler_wavelength > 0:
            raise ValueError("idler_wavelength must be positive")
        if not self.gain >= 0:
            raise ValueError("gain must be >= 0")
        if not self.spontaneous_weight >= 0:
            raise ValueError("spontaneous_weight must be >= 0")


def idler_source_field(
    pump: ComplexField,
    aux: ComplexField,
    params: CrystalMixParams,
    conjugate_aux: bool = True,
) -> ComplexField:
    """``gain * pump * conj(aux)`` tagged with the idler wavelength.

    ``conjugate_aux=False`` drops the conjugation; it exists to compare
    against the physical (conjugated) result.
    """
    if pump.grid != aux.grid:
        raise GridError("pump and auxiliary fields must share a grid")
    a = conjugate_field(aux) if conjugate_aux else aux
    prod = multiply_fields(pump, a, params.idler_wavelength)
    if params.gain == 1.0:
        return prod
    return ComplexField(prod.grid, params.gain * prod.amplitude, prod.wavelength)


def _spontaneous_level(pump: ComplexField, params: CrystalMixParams) -> float:
    return params.spontaneous_weight * total_power(pump)


def idler_intensity_at_plane(
    pump: ComplexField,
    aux: ComplexField,
    z: float,
    params: CrystalMixParams,
    method="auto",
    far_field: bool = False,
    conjugate_aux: bool = True,
) -> IntensityMap:
    """Idler intensity map at distance ``z`` from the crystal.

    With ``far_field=True`` the stimulated term uses the scaled Fourier
    transform instead of the Fresnel convolution, and the returned map lives
    on the far-field lattice.
    """
    source = idler_source_field(pump, aux, params, conjugate_aux)
    if far_field:
        out = propagate_fraunhofer(source, z)
    else:
        out = propagate_fresnel(source, z, method=method)
    values = out.intensity + _spontaneous_level(pump, params)
    return IntensityMap(out.grid, values, z)


def stimulated_to_spontaneous_ratio(
    pump: ComplexField,
    aux: ComplexField,
    z: float,
    params: CrystalMixParams,
    method="auto",
) -> float:
    """Peak of the stimulated term over the uniform spontaneous background.

    Returns ``math.inf`` when the background vanishes but the stimulated
    term does not, and ``0.0`` when there is no stimulated emission.
    """
    source = idler_source_field(pump, aux, params)
    peak = float(propagate_fresnel(source, z, method=method).intensity.max())
    background = _spontaneous_level(pump, params)
    if peak == 0.0:
        return 0.0
    if background == 0.0:
        return math.inf
    return peak / background


def spontaneous_weight_for_ratio(
    pump: ComplexField,
    aux: ComplexField,
    z: float,
    params: CrystalMixParams,
    ratio: float,
    method="auto",
) -> float:
    """Spontaneous weight that puts the stimulated peak at ``ratio`` times the background."""
    if not ratio > 0:
        raise ValueError("ratio must be positive")
    source = idler_source_field(pump, aux, params)
    peak = float(propagate_fresnel(source, z, method=method).intensity.max())
    return peak / (ratio * total_power(pump))


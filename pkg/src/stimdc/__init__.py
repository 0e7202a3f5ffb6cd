"""Scalar wave-optics model of image transfer by stimulated down-conversion."""
from .downconversion import CrystalMixParams, idler_intensity_at_plane, idler_source_field
from .field_grid import ComplexField, GridSpec, IntensityProfile
from .propagation import PropagationMethod, propagate_fraunhofer, propagate_fresnel

__version__ = "0.1.0"

__all__ = [
    "CrystalMixParams",
    "idler_intensity_at_plane",
    "idler_source_field",
    "ComplexField",
    "GridSpec",
    "IntensityProfile",
    "PropagationMethod",
    "propagate_fraunhofer",
    "propagate_fresnel",
]

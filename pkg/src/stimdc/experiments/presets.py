"""The five bench layouts (interference and imaging, pump and auxiliary).

Wavelengths: pump 442 nm, auxiliary 845 nm, idler 925 nm. Masks sit 0.15 m
before the crystal and profiles are taken 0.8 m after it.

Imaging layouts put the lens one focal length before the crystal (the focus
lands in the crystal) and pick the object distance with the thin-lens
equation. The image distance is chosen so that, at the detection plane, the
masked beam and the idler carry equal and opposite residual defocus; see
:func:`balanced_image_distance`.
"""
from __future__ import annotations

import math

from ..downconversion import CrystalMixParams
from ..elements import DoubleSlitSpec, KnifeEdgeSpec
from ..field_grid import GridSpec
from .config import (
    BeamConfig,
    ExperimentConfig,
    KnifeEdgePlacement,
    LensConfig,
    SlitPlacement,
    render_config,
)

__all__ = [
    "PUMP_WAVELENGTH",
    "AUX_WAVELENGTH",
    "IDLER_WAVELENGTH",
    "MASK_DISTANCE",
    "DETECTION_DISTANCE",
    "ASYMMETRIC_TRANSMISSIONS",
    "balanced_image_distance",
    "focal_plane_lens",
    "PRESETS",
    "preset_config",
    "preset_text",
]

PUMP_WAVELENGTH = 442e-9
AUX_WAVELENGTH = 845e-9
IDLER_WAVELENGTH = 925e-9
MASK_DISTANCE = 0.15
DETECTION_DISTANCE = 0.8
ASYMMETRIC_TRANSMISSIONS = (1.0, 0.7)

INTERFERENCE_GRID = GridSpec.square(1024, 10e-6)
# tall and narrow: the vertical image is ~11x magnified (idler ~23x for the
# pump-imaging case); the horizontal beam is kept small and elliptical
IMAGING_GRID = GridSpec(nx=512, ny=8192, dx=25e-6, dy=9.5e-6)
IMAGING_WAIST_X = 0.1e-3

_INTERFERENCE_SLITS = DoubleSlitSpec(slit_width=0.4e-3, edge_gap=0.2e-3)
_IMAGING_SLITS = DoubleSlitSpec(
    slit_width=1e-3, edge_gap=1e-3, transmissions=ASYMMETRIC_TRANSMISSIONS
)


def balanced_image_distance(
    z: float, beam_wavelength: float, idler_wavelength: float, conjugated: bool
) -> float:
    """Image distance past the crystal that balances defocus at plane ``z``.

    With the crystal at the back focal plane, the crystal field is the object
    spectrum times a quadratic phase fixed by the image distance. The masked
    beam and the idler then reach plane ``z`` with residual curvatures of
    equal size and opposite sign, which leaves their intensities identical up
    to scale (and a mirror flip when the idler carries the conjugate).
    """
    sign = -1.0 if conjugated else 1.0
    return 2 * z / (1 + sign * beam_wavelength / idler_wavelength)


def focal_plane_lens(object_distance: float, image_distance: float) -> float:
    """Focal length ``f`` of a lens placed ``f`` before the crystal.

    Solves ``1/(D - f) + 1/(f + z_img) = 1/f`` for an object ``D`` upstream of
    the crystal and an image ``z_img`` downstream.
    """
    zi = image_distance
    return -zi + math.sqrt(zi * zi + object_distance * zi)


def _crystal(spontaneous_weight=0.0):
    return CrystalMixParams(IDLER_WAVELENGTH, gain=1.0, spontaneous_weight=spontaneous_weight)


def _imaging_lens(beam_wavelength, conjugated):
    z_img = balanced_image_distance(
        DETECTION_DISTANCE, beam_wavelength, IDLER_WAVELENGTH, conjugated
    )
    f = focal_plane_lens(MASK_DISTANCE, z_img)
    return LensConfig(distance=f, image_distance=z_img)


def fig2() -> ExperimentConfig:
    """Double slit on the pump; uniform auxiliary."""
    return ExperimentConfig(
        grid=INTERFERENCE_GRID,
        pump=BeamConfig(
            PUMP_WAVELENGTH, waist=1e-3, double_slit=SlitPlacement(_INTERFERENCE_SLITS, MASK_DISTANCE)
        ),
        auxiliary=BeamConfig(AUX_WAVELENGTH),
        crystal=_crystal(),
        detection_distance=DETECTION_DISTANCE,
        name="fig2",
    )


def fig4() -> ExperimentConfig:
    """Asymmetric double slit on the auxiliary; uniform pump."""
    slits = DoubleSlitSpec(0.4e-3, 0.2e-3, transmissions=ASYMMETRIC_TRANSMISSIONS)
    return ExperimentConfig(
        grid=INTERFERENCE_GRID,
        pump=BeamConfig(PUMP_WAVELENGTH),
        auxiliary=BeamConfig(
            AUX_WAVELENGTH, waist=1e-3, double_slit=SlitPlacement(slits, MASK_DISTANCE)
        ),
        crystal=_crystal(),
        detection_distance=DETECTION_DISTANCE,
        name="fig4",
    )


def fig6() -> ExperimentConfig:
    """Asymmetric double slit imaged through a lens on the pump."""
    return ExperimentConfig(
        grid=IMAGING_GRID,
        pump=BeamConfig(
            PUMP_WAVELENGTH,
            waist=2e-3,
            waist_x=IMAGING_WAIST_X,
            double_slit=SlitPlacement(_IMAGING_SLITS, MASK_DISTANCE),
            lens=_imaging_lens(PUMP_WAVELENGTH, conjugated=False),
        ),
        auxiliary=BeamConfig(AUX_WAVELENGTH),
        crystal=_crystal(),
        detection_distance=DETECTION_DISTANCE,
        name="fig6",
    )


def fig8() -> ExperimentConfig:
    """Asymmetric double slit imaged through a lens on the auxiliary."""
    return ExperimentConfig(
        grid=IMAGING_GRID,
        pump=BeamConfig(PUMP_WAVELENGTH),
        auxiliary=BeamConfig(
            AUX_WAVELENGTH,
            waist=2e-3,
            waist_x=IMAGING_WAIST_X,
            double_slit=SlitPlacement(_IMAGING_SLITS, MASK_DISTANCE),
            lens=_imaging_lens(AUX_WAVELENGTH, conjugated=True),
        ),
        crystal=_crystal(),
        detection_distance=DETECTION_DISTANCE,
        name="fig8",
    )


def fig10() -> ExperimentConfig:
    """Blade covering the lower half of the auxiliary, imaged through a lens."""
    return ExperimentConfig(
        grid=IMAGING_GRID,
        pump=BeamConfig(PUMP_WAVELENGTH),
        auxiliary=BeamConfig(
            AUX_WAVELENGTH,
            waist=0.5e-3,
            waist_x=IMAGING_WAIST_X,
            knife_edge=KnifeEdgePlacement(KnifeEdgeSpec(0.0, "below"), MASK_DISTANCE),
            lens=_imaging_lens(AUX_WAVELENGTH, conjugated=True),
        ),
        crystal=_crystal(),
        detection_distance=DETECTION_DISTANCE,
        name="fig10",
    )


PRESETS = {"fig2": fig2, "fig4": fig4, "fig6": fig6, "fig8": fig8, "fig10": fig10}


def preset_config(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def preset_text(name: str) -> str:
    return render_config(preset_config(name))

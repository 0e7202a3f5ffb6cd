"""Run a bench configuration end to end and collect profile metrics."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..downconversion import idler_intensity_at_plane
from ..elements import apply_double_slit, apply_knife_edge, gaussian_source, plane_wave
from ..field_grid import (
    ComplexField,
    IntensityProfile,
    intensity_map,
    total_power,
    vertical_profile,
)
from ..propagation import apply_thin_lens, fraunhofer_validity, propagate_fresnel
from . import analysis
from .config import BEAMS, ExperimentConfig, render_config
from .io import write_intensity_pgm, write_profile_csv

__all__ = [
    "ExperimentError",
    "ExperimentResult",
    "structured_beam",
    "beam_at_crystal",
    "run_experiment",
    "write_result",
    "metrics_json",
    "FRINGE_MIN_HEIGHT",
]

# side lobes of the 0.4/0.2 mm double slit sit near 0.3 of the central peak,
# so the runner counts maxima down to 0.1 of the maximum
FRINGE_MIN_HEIGHT = 0.1


class ExperimentError(RuntimeError):
    pass


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    pump: IntensityProfile
    auxiliary: IntensityProfile
    idler: IntensityProfile
    maps: dict = field(default_factory=dict)
    crystal_fields: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    reference: ExperimentResult | None = None

    def profile(self, name: str) -> IntensityProfile:
        return getattr(self, name)


def structured_beam(config: ExperimentConfig) -> str:
    """Name of the beam carrying the image: masked first, then lensed, else pump."""
    for b in BEAMS:
        if config.beam(b).is_masked:
            return b
    for b in BEAMS:
        if config.beam(b).lens is not None:
            return b
    return "pump"


def beam_at_crystal(config: ExperimentConfig, name: str) -> ComplexField:
    """Field of beam ``name`` at the crystal plane.

    The envelope is created at the mask (or lens), masked, carried to the
    lens, focused, and carried to the crystal. A beam without elements is
    defined directly at the crystal.
    """
    beam = config.beam(name)
    grid, method = config.grid, config.method
    if beam.waist is None:
        f = plane_wave(grid, beam.wavelength, beam.amplitude)
    else:
        f = gaussian_source(grid, beam.waist, beam.wavelength, beam.amplitude, waist_x=beam.waist_x)
    if beam.double_slit is not None:
        f = apply_double_slit(f, beam.double_slit.spec)
    if beam.knife_edge is not None:
        f = apply_knife_edge(f, beam.knife_edge.spec)
    here = beam.source_distance
    if beam.lens is not None:
        gap = here - beam.lens.distance
        if gap > 0:
            f = propagate_fresnel(f, gap, method=method)
        f = apply_thin_lens(f, config.focal_length(name))
        here = beam.lens.distance
    if here > 0:
        f = propagate_fresnel(f, here, method=method)
    return f


def _metric(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except analysis.AnalysisError:
        return None


def _simulate(config: ExperimentConfig):
    z = config.detection_distance
    fields = {b: beam_at_crystal(config, b) for b in BEAMS}
    maps = {
        b: intensity_map(propagate_fresnel(fields[b], z, method=config.method), z) for b in BEAMS
    }
    maps["idler"] = idler_intensity_at_plane(
        fields["pump"], fields["auxiliary"], z, config.crystal, method=config.method
    )
    return fields, maps


def _profiles(config, maps):
    out = {}
    for name, m in maps.items():
        lam = config.crystal.idler_wavelength if name == "idler" else config.beam(name).wavelength
        p = vertical_profile(m)
        out[name] = IntensityProfile(p.positions, p.values, p.plane_distance, lam)
    return out


def _metrics(config, fields, maps, profiles):
    src = structured_beam(config)
    lam_src = config.beam(src).wavelength
    lam_i = config.crystal.idler_wavelength
    m: dict = {"structured_beam": src}
    for name, p in profiles.items():
        m[f"{name}_fringe_spacing"] = _metric(analysis.fringe_spacing, p, FRINGE_MIN_HEIGHT)
        m[f"{name}_visibility"] = _metric(analysis.visibility, p)
        m[f"{name}_centroid"] = _metric(analysis.centroid, p)
        m[f"{name}_brighter_side"] = analysis.brighter_side(p)
    s_src, s_idl = m[f"{src}_fringe_spacing"], m["idler_fringe_spacing"]
    m["fringe_ratio"] = s_idl / s_src if s_src and s_idl else None
    m["wavelength_ratio"] = lam_i / lam_src
    corr = _metric(analysis.mirror_correlation, profiles[src], profiles["idler"], lam_i / lam_src)
    m["correlation_direct"], m["correlation_mirrored"] = corr if corr else (None, None)

    background = config.crystal.spontaneous_weight * total_power(fields["pump"])
    peak = float(maps["idler"].values.max()) - background
    if peak <= 0:
        m["stimulated_to_spontaneous"] = 0.0
    else:
        m["stimulated_to_spontaneous"] = math.inf if background == 0 else peak / background

    slit = config.beam(src).double_slit
    if slit is not None:
        check = fraunhofer_validity(slit.spec.half_height, lam_i, config.detection_distance)
        m["fraunhofer_ratio"], m["fraunhofer_regime"] = check.ratio, bool(check.is_fraunhofer)
    return m


def _without_knife_edges(config: ExperimentConfig) -> ExperimentConfig:
    """Same layout with every blade moved clear of the grid."""
    out = config
    clear = -2.0 * config.grid.ny * config.grid.dy
    for b in BEAMS:
        beam = config.beam(b)
        ke = beam.knife_edge
        if ke is None:
            continue
        # "below" keeps y >= edge, so a far-off edge passes the whole field
        spec = replace(ke.spec, edge_position=clear, covered_side="below")
        out = replace(out, **{b: replace(beam, knife_edge=replace(ke, spec=spec))})
    return out


def _run_single(config):
    fields, maps = _simulate(config)
    profiles = _profiles(config, maps)
    metrics = _metrics(config, fields, maps, profiles)
    return ExperimentResult(
        config=config,
        pump=profiles["pump"],
        auxiliary=profiles["auxiliary"],
        idler=profiles["idler"],
        maps=maps,
        crystal_fields=fields,
        metrics=metrics,
    )


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Simulate pump, auxiliary and idler at the detection plane.

    With a knife edge in either beam the run is repeated without the blade
    and ``<beam>_centroid_shift`` metrics report the displacement the blade
    causes.

    Raises
    ------
    ExperimentError
        any numerical or sampling failure, tagged with the experiment name
    """
    label = config.name or "<unnamed>"
    try:
        result = _run_single(config)
        if any(config.beam(b).knife_edge is not None for b in BEAMS):
            ref = _run_single(_without_knife_edges(config))
            result.reference = ref
            for name in ("pump", "auxiliary", "idler"):
                a, b = result.metrics[f"{name}_centroid"], ref.metrics[f"{name}_centroid"]
                result.metrics[f"{name}_centroid_shift"] = (
                    None if a is None or b is None else a - b
                )
    except ExperimentError:
        raise
    except (ValueError, FloatingPointError, MemoryError) as exc:
        raise ExperimentError(f"experiment {label!r}: {exc}") from exc
    return result


def metrics_json(metrics: dict) -> str:
    """JSON text for a metrics dict; non-finite floats become strings."""
    clean = {
        k: str(v) if isinstance(v, float) and not math.isfinite(v) else v
        for k, v in metrics.items()
    }
    return json.dumps(clean, indent=2, sort_keys=True) + "\n"


def write_result(result: ExperimentResult, directory) -> list[Path]:
    """Write profiles (CSV), maps (PGM), metrics.json and the config used."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name in ("pump", "auxiliary", "idler"):
        written.append(write_profile_csv(result.profile(name), d / f"{name}_profile.csv"))
        written.append(write_intensity_pgm(result.maps[name], d / f"{name}_map.pgm"))
    mpath = d / "metrics.json"
    mpath.write_text(metrics_json(result.metrics), encoding="utf-8")
    cpath = d / "config.ini"
    cpath.write_text(render_config(result.config), encoding="utf-8")
    return written + [mpath, cpath]

"""Bench configuration documents.

A document is a sequence of ``[section]`` headers followed by ``key = value``
lines; ``#`` starts a comment. Lengths are meters. Sections::

    [experiment]            name, detection_distance, method
    [grid]                  nx, ny, dx, dy
    [crystal]               idler_wavelength, gain, spontaneous_weight
    [pump] / [auxiliary]    wavelength, waist, waist_x, amplitude
    [<beam>.double_slit]    slit_width, edge_gap | center_spacing,
                            transmission_upper, transmission_lower,
                            slit_length, distance
    [<beam>.knife_edge]     edge_position, covered_side, distance
    [<beam>.lens]           distance, focal_length | image_distance
    [output]                directory

Element ``distance`` values are measured upstream of the crystal. A lens
without ``focal_length`` gets one from 1/s + 1/s' = 1/f, with the mask as the
object and the image at ``image_distance`` (default: the detection plane)
past the crystal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..downconversion import CrystalMixParams
from ..elements import DoubleSlitSpec, KnifeEdgeSpec
from ..field_grid import GridError, GridSpec
from ..propagation import PropagationMethod

__all__ = [
    "ConfigError",
    "SlitPlacement",
    "KnifeEdgePlacement",
    "LensConfig",
    "BeamConfig",
    "ExperimentConfig",
    "parse_config",
    "render_config",
    "load_config",
    "BEAMS",
]

BEAMS = ("pump", "auxiliary")


class ConfigError(ValueError):
    """Validation failure; ``issues`` holds ``(line or None, message)`` pairs."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("\n".join(_fmt_issue(line, msg) for line, msg in self.issues))


def _fmt_issue(line, msg):
    return f"line {line}: {msg}" if line is not None else msg


@dataclass(frozen=True)
class SlitPlacement:
    spec: DoubleSlitSpec
    distance: float


@dataclass(frozen=True)
class KnifeEdgePlacement:
    spec: KnifeEdgeSpec
    distance: float


@dataclass(frozen=True)
class LensConfig:
    distance: float
    focal_length: float | None = None
    image_distance: float | None = None


@dataclass(frozen=True)
class BeamConfig:
    wavelength: float
    waist: float | None = None
    waist_x: float | None = None
    amplitude: float = 1.0
    double_slit: SlitPlacement | None = None
    knife_edge: KnifeEdgePlacement | None = None
    lens: LensConfig | None = None

    @property
    def mask_distance(self) -> float | None:
        for m in (self.double_slit, self.knife_edge):
            if m is not None:
                return m.distance
        return None

    @property
    def source_distance(self) -> float:
        """Where the source envelope is defined, upstream of the crystal."""
        d = self.mask_distance
        if d is not None:
            return d
        return self.lens.distance if self.lens is not None else 0.0

    @property
    def is_masked(self) -> bool:
        return self.double_slit is not None or self.knife_edge is not None


@dataclass(frozen=True)
class ExperimentConfig:
    grid: GridSpec
    pump: BeamConfig
    auxiliary: BeamConfig
    crystal: CrystalMixParams
    detection_distance: float
    name: str = ""
    method: PropagationMethod = PropagationMethod.AUTO
    output_directory: str | None = None

    def beam(self, name: str) -> BeamConfig:
        return getattr(self, name)

    def focal_length(self, beam_name: str) -> float:
        """Lens focal length for ``beam_name``, derived when not given."""
        beam = self.beam(beam_name)
        lens = beam.lens
        if lens is None:
            raise ValueError(f"{beam_name} has no lens")
        if lens.focal_length is not None:
            return lens.focal_length
        image = self.detection_distance if lens.image_distance is None else lens.image_distance
        s = beam.mask_distance - lens.distance
        s_img = lens.distance + image
        return 1.0 / (1.0 / s + 1.0 / s_img)

    def with_overrides(self, grid_n=None, dx=None, method=None) -> ExperimentConfig:
        g = self.grid
        if grid_n is not None:
            g = GridSpec(grid_n, grid_n, g.dx, g.dy)
        if dx is not None:
            g = GridSpec(g.nx, g.ny, dx, dx)
        out = replace(self, grid=g)
        if method is not None:
            out = replace(out, method=PropagationMethod.coerce(method))
        return out


# schema: key -> (type, required)
_F, _I, _S = float, int, str
_SCHEMA = {
    "experiment": {"name": (_S, False), "detection_distance": (_F, True), "method": (_S, False)},
    "grid": {"nx": (_I, True), "ny": (_I, False), "dx": (_F, True), "dy": (_F, False)},
    "crystal": {
        "idler_wavelength": (_F, True),
        "gain": (_F, False),
        "spontaneous_weight": (_F, False),
    },
    "beam": {
        "wavelength": (_F, True),
        "waist": (_F, False),
        "waist_x": (_F, False),
        "amplitude": (_F, False),
    },
    "double_slit": {
        "slit_width": (_F, True),
        "edge_gap": (_F, False),
        "center_spacing": (_F, False),
        "transmission_upper": (_F, False),
        "transmission_lower": (_F, False),
        "slit_length": (_F, False),
        "distance": (_F, True),
    },
    "knife_edge": {
        "edge_position": (_F, False),
        "covered_side": (_S, False),
        "distance": (_F, True),
    },
    "lens": {"distance": (_F, True), "focal_length": (_F, False), "image_distance": (_F, False)},
    "output": {"directory": (_S, False)},
}
_REQUIRED_SECTIONS = ("experiment", "grid", "crystal", "pump", "auxiliary")


def _schema_for(section):
    if section in BEAMS:
        return _SCHEMA["beam"]
    if "." in section:
        beam, element = section.split(".", 1)
        if beam in BEAMS and element in ("double_slit", "knife_edge", "lens"):
            return _SCHEMA[element]
        return None
    return _SCHEMA.get(section)


_SKIP = object()


def _tokenize(text):
    """Yield ``{section: {key: (value_str, line)}}`` plus header lines and issues."""
    sections, headers, issues = {}, {}, []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                issues.append((lineno, f"malformed section header {raw.strip()!r}"))
                current = None
                continue
            name = line[1:-1].strip()
            if _schema_for(name) is None:
                issues.append((lineno, f"unknown section [{name}]"))
                current = _SKIP
                continue
            if name in sections:
                issues.append((lineno, f"duplicate section [{name}]"))
            sections.setdefault(name, {})
            headers[name] = lineno
            current = name
            continue
        if "=" not in line:
            issues.append((lineno, f"expected 'key = value', got {raw.strip()!r}"))
            continue
        key, value = (s.strip() for s in line.split("=", 1))
        if current is _SKIP:
            continue
        if current is None:
            issues.append((lineno, f"key {key!r} outside a section"))
            continue
        schema = _schema_for(current)
        if key not in schema:
            issues.append((lineno, f"unknown key {key!r} in [{current}]"))
            continue
        if key in sections[current]:
            issues.append((lineno, f"duplicate key {key!r} in [{current}]"))
        sections[current][key] = (value, lineno)
    return sections, headers, issues


class _Reader:
    def __init__(self, sections, headers, issues):
        self.sections, self.headers, self.issues = sections, headers, issues

    def get(self, section, key, positive=False, nonneg=False):
        typ, required = _schema_for(section)[key]
        entry = self.sections.get(section, {}).get(key)
        if entry is None:
            if required and section in self.sections:
                self.issues.append(
                    (self.headers.get(section), f"missing required key {key!r} in [{section}]")
                )
            return None
        raw, line = entry
        try:
            value = typ(raw)
        except ValueError:
            self.issues.append((line, f"{key}: cannot parse {raw!r} as {typ.__name__}"))
            return None
        if typ is float and not math.isfinite(value):
            self.issues.append((line, f"{key}: must be finite, got {raw!r}"))
            return None
        if positive and not value > 0:
            self.issues.append((line, f"{key}: must be positive, got {raw}"))
            return None
        if nonneg and not value >= 0:
            self.issues.append((line, f"{key}: must be >= 0, got {raw}"))
            return None
        return value

    def line(self, section, key=None):
        if key is not None and key in self.sections.get(section, {}):
            return self.sections[section][key][1]
        return self.headers.get(section)


def _build_or_report(r, line, factory, *args, **kwargs):
    try:
        return factory(*args, **kwargs)
    except (ValueError, GridError) as exc:
        r.issues.append((line, str(exc)))
        return None


def _parse_beam(r, name):
    wl = r.get(name, "wavelength", positive=True)
    waist = r.get(name, "waist", positive=True)
    waist_x = r.get(name, "waist_x", positive=True)
    amp = r.get(name, "amplitude")
    slit = knife = lens = None
    sec = f"{name}.double_slit"
    if sec in r.sections:
        width = r.get(sec, "slit_width", positive=True)
        gap = r.get(sec, "edge_gap", nonneg=True)
        spacing = r.get(sec, "center_spacing", positive=True)
        t_up = r.get(sec, "transmission_upper")
        t_lo = r.get(sec, "transmission_lower")
        length = r.get(sec, "slit_length", positive=True)
        dist = r.get(sec, "distance", positive=True)
        if gap is not None and spacing is not None:
            r.issues.append((r.line(sec), "give either edge_gap or center_spacing, not both"))
        elif gap is None and spacing is None and "edge_gap" not in r.sections[sec]:
            r.issues.append((r.line(sec), f"missing edge_gap or center_spacing in [{sec}]"))
        elif width is not None and dist is not None:
            spec = _build_or_report(
                r,
                r.line(sec),
                DoubleSlitSpec,
                slit_width=width,
                edge_gap=0.0 if gap is None else gap,
                transmissions=(1.0 if t_up is None else t_up, 1.0 if t_lo is None else t_lo),
                slit_length=5e-3 if length is None else length,
                center_spacing=spacing,
            )
            if spec is not None:
                slit = SlitPlacement(spec, dist)
    sec = f"{name}.knife_edge"
    if sec in r.sections:
        pos = r.get(sec, "edge_position")
        side = r.get(sec, "covered_side")
        dist = r.get(sec, "distance", positive=True)
        spec = _build_or_report(
            r,
            r.line(sec, "covered_side"),
            KnifeEdgeSpec,
            0.0 if pos is None else pos,
            "below" if side is None else side,
        )
        if spec is not None and dist is not None:
            knife = KnifeEdgePlacement(spec, dist)
    sec = f"{name}.lens"
    if sec in r.sections:
        dist = r.get(sec, "distance", positive=True)
        focal = r.get(sec, "focal_length")
        image = r.get(sec, "image_distance", positive=True)
        if focal is not None and focal == 0:
            r.issues.append((r.line(sec, "focal_length"), "focal_length must be nonzero"))
        elif focal is not None and image is not None:
            r.issues.append((r.line(sec), "give either focal_length or image_distance, not both"))
        elif dist is not None:
            lens = LensConfig(dist, focal, image)
    if slit is not None and knife is not None:
        r.issues.append((r.line(f"{name}.knife_edge"), f"{name}: at most one mask per beam"))
    if lens is not None:
        mask = slit or knife
        if mask is not None and not lens.distance < mask.distance:
            r.issues.append(
                (r.line(f"{name}.lens", "distance"), f"{name}: lens must sit between mask and crystal")
            )
        if lens.focal_length is None and mask is None:
            r.issues.append(
                (r.line(f"{name}.lens"), f"{name}: focal_length required when the beam has no mask")
            )
    if wl is None:
        return None
    return BeamConfig(
        wavelength=wl,
        waist=waist,
        waist_x=waist_x,
        amplitude=1.0 if amp is None else amp,
        double_slit=slit,
        knife_edge=knife,
        lens=lens,
    )


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a configuration document.

    Raises
    ------
    ConfigError
        listing every problem found, with line numbers where they apply
    """
    sections, headers, issues = _tokenize(text)
    for sec in _REQUIRED_SECTIONS:
        if sec not in sections:
            keys = [k for k, (_, req) in _schema_for(sec).items() if req]
            issues.append((None, f"missing section [{sec}] (required keys: {', '.join(keys)})"))
    r = _Reader(sections, headers, issues)

    name = r.get("experiment", "name") or ""
    z = r.get("experiment", "detection_distance", positive=True)
    method_raw = r.get("experiment", "method")
    method = PropagationMethod.AUTO
    if method_raw is not None:
        try:
            method = PropagationMethod.coerce(method_raw)
        except ValueError:
            issues.append((r.line("experiment", "method"), f"unknown method {method_raw!r}"))

    grid = None
    nx, dx = r.get("grid", "nx"), r.get("grid", "dx", positive=True)
    ny, dy = r.get("grid", "ny"), r.get("grid", "dy", positive=True)
    if nx is not None and dx is not None:
        grid = _build_or_report(
            r, r.line("grid"), GridSpec, nx, nx if ny is None else ny, dx, dx if dy is None else dy
        )

    crystal = None
    wl_i = r.get("crystal", "idler_wavelength", positive=True)
    gain = r.get("crystal", "gain", nonneg=True)
    spont = r.get("crystal", "spontaneous_weight", nonneg=True)
    if wl_i is not None:
        crystal = CrystalMixParams(
            wl_i, 1.0 if gain is None else gain, 0.0 if spont is None else spont
        )

    beams = {b: _parse_beam(r, b) if b in sections else None for b in BEAMS}
    outdir = r.get("output", "directory")

    if issues:
        raise ConfigError(sorted(issues, key=lambda it: (it[0] is None, it[0] or 0)))
    cfg = ExperimentConfig(
        grid=grid,
        pump=beams["pump"],
        auxiliary=beams["auxiliary"],
        crystal=crystal,
        detection_distance=z,
        name=name,
        method=method,
        output_directory=outdir,
    )
    _check_geometry(cfg)
    return cfg


def _check_geometry(cfg: ExperimentConfig):
    issues = []
    for b in BEAMS:
        beam = cfg.beam(b)
        if beam.lens is not None and beam.lens.focal_length is None:
            f = cfg.focal_length(b)
            if not (math.isfinite(f) and f > 0):
                issues.append((None, f"{b}: derived focal length {f!r} is not positive"))
        if beam.waist is None and beam.waist_x is not None:
            issues.append((None, f"{b}: waist_x given without waist"))
    if issues:
        raise ConfigError(issues)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _fmt(v) -> str:
    return repr(float(v))


def render_config(cfg: ExperimentConfig) -> str:
    """Inverse of :func:`parse_config` (``parse_config(render_config(c)) == c``)."""
    out = []

    def section(name, items):
        out.append(f"[{name}]")
        for k, v in items:
            if v is not None:
                out.append(f"{k} = {v}")
        out.append("")

    if cfg.name:
        out.append(f"# {cfg.name}")
    section(
        "experiment",
        [
            ("name", cfg.name or None),
            ("detection_distance", _fmt(cfg.detection_distance)),
            ("method", cfg.method.value),
        ],
    )
    g = cfg.grid
    section("grid", [("nx", g.nx), ("ny", g.ny), ("dx", _fmt(g.dx)), ("dy", _fmt(g.dy))])
    c = cfg.crystal
    section(
        "crystal",
        [
            ("idler_wavelength", _fmt(c.idler_wavelength)),
            ("gain", _fmt(c.gain)),
            ("spontaneous_weight", _fmt(c.spontaneous_weight)),
        ],
    )
    for b in BEAMS:
        beam = cfg.beam(b)
        opt = lambda v: None if v is None else _fmt(v)  # noqa: E731
        section(
            b,
            [
                ("wavelength", _fmt(beam.wavelength)),
                ("waist", opt(beam.waist)),
                ("waist_x", opt(beam.waist_x)),
                ("amplitude", _fmt(beam.amplitude)),
            ],
        )
        if beam.double_slit is not None:
            s = beam.double_slit.spec
            section(
                f"{b}.double_slit",
                [
                    ("slit_width", _fmt(s.slit_width)),
                    ("edge_gap", _fmt(s.edge_gap)),
                    ("transmission_upper", _fmt(s.transmissions[0])),
                    ("transmission_lower", _fmt(s.transmissions[1])),
                    ("slit_length", _fmt(s.slit_length)),
                    ("distance", _fmt(beam.double_slit.distance)),
                ],
            )
        if beam.knife_edge is not None:
            k = beam.knife_edge.spec
            section(
                f"{b}.knife_edge",
                [
                    ("edge_position", _fmt(k.edge_position)),
                    ("covered_side", k.covered_side),
                    ("distance", _fmt(beam.knife_edge.distance)),
                ],
            )
        if beam.lens is not None:
            ln = beam.lens
            section(
                f"{b}.lens",
                [
                    ("distance", _fmt(ln.distance)),
                    ("focal_length", opt(ln.focal_length)),
                    ("image_distance", opt(ln.image_distance)),
                ],
            )
    if cfg.output_directory is not None:
        section("output", [("directory", cfg.output_directory)])
    return "\n".join(out)

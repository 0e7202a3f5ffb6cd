"""Profile CSV and 16-bit PGM writers."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..field_grid import IntensityMap, IntensityProfile

__all__ = ["OutputError", "write_profile_csv", "read_profile_csv", "write_intensity_pgm", "read_pgm"]

CSV_HEADER = ("position_m", "intensity")


class OutputError(OSError):
    pass


def write_profile_csv(p: IntensityProfile, path) -> Path:
    """Write ``position_m,intensity`` rows; values use ``%.9e`` (10 significant digits)."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(CSV_HEADER) + "\n")
            for y, v in zip(p.positions, p.values):
                fh.write(f"{y:.9e},{v:.9e}\n")
    except OSError as exc:
        raise OutputError(f"cannot write profile to {path}: {exc.strerror or exc}") from exc
    return path


def read_profile_csv(path, plane_distance: float = 0.0) -> IntensityProfile:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"{path}: expected header {','.join(CSV_HEADER)}")
    data = np.array([[float(a), float(b)] for a, b in rows[1:]])
    return IntensityProfile(data[:, 0], data[:, 1], plane_distance)


def write_intensity_pgm(m: IntensityMap | np.ndarray, path) -> Path:
    """Binary P5 PGM, 16-bit big-endian, scaled so the map maximum is 65535.

    Row 0 of the image is the top of the beam (largest y).
    """
    values = m.values if isinstance(m, IntensityMap) else np.asarray(m, dtype=float)
    if values.ndim != 2:
        raise ValueError("intensity map must be 2-D")
    vmax = float(values.max()) if values.size else 0.0
    scaled = np.zeros(values.shape) if vmax <= 0 else values / vmax * 65535.0
    pixels = np.flipud(np.rint(np.clip(scaled, 0, 65535))).astype(">u2")
    h, w = pixels.shape
    path = Path(path)
    try:
        with open(path, "wb") as fh:
            fh.write(f"P5\n{w} {h}\n65535\n".encode("ascii"))
            fh.write(pixels.tobytes())
    except OSError as exc:
        raise OutputError(f"cannot write image to {path}: {exc.strerror or exc}") from exc
    return path


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Return ``(pixels, maxval)`` for a binary PGM written by :func:`write_intensity_pgm`."""
    data = Path(path).read_bytes()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        start = pos
        while not data[pos:pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos].decode("ascii"))
    pos += 1
    magic, w, h, maxval = tokens[0], int(tokens[1]), int(tokens[2]), int(tokens[3])
    if magic != "P5":
        raise ValueError(f"{path}: not a binary PGM")
    dtype = ">u2" if maxval > 255 else "u1"
    pixels = np.frombuffer(data[pos:], dtype=dtype, count=w * h).reshape(h, w)
    return pixels, maxval

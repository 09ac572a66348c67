"""Output artifacts and reproducibility plumbing.

Rasters export as binary PGM (P5), reports as JSON, traces as CSV.  All files
are written atomically (temp + rename) and JSON reports carry a provenance
block: polynomial hash, configuration hash and package version.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile

import numpy as np

from .lpoly import LaurentPolynomial, hull_vertices_2d

VERSION = "0.1.0"


def atomic_write_bytes(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def write_pgm(path: str, occupancy: np.ndarray) -> None:
    """Binary PGM: occupied pixels black (0), free white (255), top row last.

    The occupancy grid stores row 0 at the bottom of the coordinate window,
    so rows are flipped for the image convention.
    """
    rows, cols = occupancy.shape
    img = np.where(occupancy[::-1], 0, 255).astype(np.uint8)
    header = f"P5\n{cols} {rows}\n255\n".encode("ascii")
    atomic_write_bytes(path, header + img.tobytes())


def read_pgm(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    i = 0
    while len(fields) < 4:
        while i < len(data) and data[i : i + 1].isspace():
            i += 1
        if data[i : i + 1] == b"#":
            while i < len(data) and data[i] != 0x0A:
                i += 1
            continue
        j = i
        while j < len(data) and not data[j : j + 1].isspace():
            j += 1
        fields.append(data[i:j])
        i = j
    if fields[0] != b"P5":
        raise ValueError("only binary P5 images are supported")
    cols, rows = int(fields[1]), int(fields[2])
    img = np.frombuffer(data, dtype=np.uint8, count=rows * cols, offset=i + 1)
    return (img.reshape(rows, cols) == 0)[::-1]


def write_json(path: str, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def polynomial_hash(f: LaurentPolynomial) -> str:
    return hashlib.sha256(f.canonical_text().encode("utf-8")).hexdigest()[:16]


def config_hash(config: dict) -> str:
    text = ";".join(f"{k}={config[k]!r}" for k in sorted(config))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def provenance(f: LaurentPolynomial | None, config: dict) -> dict:
    block = {"config_hash": config_hash(config), "version": VERSION}
    if f is not None:
        block["polynomial_hash"] = polynomial_hash(f)
    return block


# ---------------------------------------------------------------------------
# run configuration


class ConfigError(Exception):
    pass


DEFAULT_CONFIG = {
    "resolution": 512,
    "window": "auto",
    "angle_samples": 128,
    "quad_n": 256,
    "t_schedule": "e-1,e-2,e-3,e-4",
    "seed": 0,
    "root_tolerance": 1e-10,
    "quad_tolerance": 1e-6,
    "out_dir": ".",
}


def parse_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment; values typed per defaults."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in DEFAULT_CONFIG:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            default = DEFAULT_CONFIG[key]
            try:
                if isinstance(default, int) and not isinstance(default, bool):
                    out[key] = int(value)
                elif isinstance(default, float):
                    out[key] = float(value)
                else:
                    out[key] = value
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return out


def parse_t_schedule(text: str) -> tuple[float, ...]:
    """Comma list of t values; 'e-3' means exp(-3), plain floats accepted."""
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if piece.startswith("e") and piece[1:].lstrip("+-").isdigit():
            values.append(math.exp(float(piece[1:])))
        else:
            values.append(float(piece))
    if not values:
        raise ConfigError("empty t schedule")
    for t in values:
        if not (0.0 < t <= math.exp(-1) + 1e-12):
            raise ConfigError(f"t = {t} outside (0, 1/e]")
    return tuple(values)


# ---------------------------------------------------------------------------
# seeded corpus generator


def random_maximally_sparse(rng: np.random.Generator) -> LaurentPolynomial:
    """One random maximally sparse curve polynomial.

    Sample 3-6 lattice points in [0,5]^2, keep the hull vertices as support,
    and draw coefficients uniformly from the annulus 0.5 <= |a| <= 2 with
    uniform argument.
    """
    while True:
        k = int(rng.integers(3, 7))
        pts = {tuple(int(v) for v in rng.integers(0, 6, size=2)) for _ in range(k)}
        verts = hull_vertices_2d(sorted(pts))
        if len(verts) >= 2:
            break
    terms = {}
    for v in verts:
        r = rng.uniform(0.5, 2.0)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        terms[v] = r * complex(math.cos(phi), math.sin(phi))
    return LaurentPolynomial(2, terms)


def corpus(seed: int, count: int) -> list[LaurentPolynomial]:
    rng = np.random.default_rng(seed)
    return [random_maximally_sparse(rng) for _ in range(count)]

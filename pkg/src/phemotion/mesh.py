"""Deformed-sphere generation: icosphere subdivision plus seeded radial noise.

The displacement of a unit direction p with polar angle theta (from +z) and
azimuth phi is

    r(p) = 1 + A_g * noise(f_g * p)                      # overall shape
             + A_s * noise(f_s * p + offset)             # surface texture
             + 0.08 * sin(waves * phi) * sin(theta)^2    # countable lobes

with the two noise fields decorrelated by per-field seed salts and a fixed
surface offset. Everything is deterministic in (params, seed, subdivision)
and independent of iteration order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import GridTooLarge, SubdivisionOutOfRange
from .noise import noise3_field
from .palette import ShapeParameterId, ShapeParams

WAVE_AMPLITUDE = 0.08
SURFACE_NOISE_OFFSET = (13.7, 7.3, 5.1)
GLOBAL_SEED_SALT = 0x47
SURFACE_SEED_SALT = 0x53
MAX_SUBDIVISION = 6
MAX_SEED = 2**64 - 1
MAX_GRID = 9


@dataclass(frozen=True)
class GenSpec:
    """Everything needed to regenerate one mesh exactly."""

    params: ShapeParams
    seed: int = 0
    subdivision: int = 4

    def __post_init__(self):
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise ValueError("seed must be an integer")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError(f"seed {self.seed} outside [0, 2^64)")
        if isinstance(self.subdivision, bool) or not isinstance(self.subdivision, int):
            raise SubdivisionOutOfRange("subdivision must be an integer")
        if not 0 <= self.subdivision <= MAX_SUBDIVISION:
            raise SubdivisionOutOfRange(
                f"subdivision {self.subdivision} outside [0, {MAX_SUBDIVISION}]"
            )


@dataclass(eq=False)
class Mesh:
    """Triangulated closed surface: vertices, per-vertex unit normals, CCW faces."""

    vertices: np.ndarray  # (N, 3) float64
    normals: np.ndarray   # (N, 3) float64, unit length
    faces: np.ndarray     # (M, 3) int64, counter-clockwise from outside


def _icosahedron() -> tuple[list[tuple[float, float, float]], list[tuple[int, int, int]]]:
    t = (1.0 + math.sqrt(5.0)) / 2.0
    raw = [
        (-1.0, t, 0.0), (1.0, t, 0.0), (-1.0, -t, 0.0), (1.0, -t, 0.0),
        (0.0, -1.0, t), (0.0, 1.0, t), (0.0, -1.0, -t), (0.0, 1.0, -t),
        (t, 0.0, -1.0), (t, 0.0, 1.0), (-t, 0.0, -1.0), (-t, 0.0, 1.0),
    ]
    n = math.sqrt(1.0 + t * t)
    verts = [(x / n, y / n, z / n) for x, y, z in raw]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    return verts, faces


def _subdivide(verts, faces):
    """Split every triangle in four; midpoints are pushed onto the unit sphere."""
    cache: dict[tuple[int, int], int] = {}

    def midpoint(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        idx = cache.get(key)
        if idx is not None:
            return idx
        ax, ay, az = verts[i]
        bx, by, bz = verts[j]
        mx, my, mz = (ax + bx) / 2.0, (ay + by) / 2.0, (az + bz) / 2.0
        n = math.sqrt(mx * mx + my * my + mz * mz)
        verts.append((mx / n, my / n, mz / n))
        idx = len(verts) - 1
        cache[key] = idx
        return idx

    out = []
    for a, b, c in faces:
        ab = midpoint(a, b)
        bc = midpoint(b, c)
        ca = midpoint(c, a)
        out.extend(((a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)))
    return verts, out


@lru_cache(maxsize=MAX_SUBDIVISION + 1)
def unit_icosphere(subdivision: int) -> tuple[np.ndarray, np.ndarray]:
    """Unit icosphere with 10*4^s + 2 vertices and 20*4^s CCW faces.

    Returned arrays are read-only and shared; callers must copy before
    mutating.
    """
    if not 0 <= subdivision <= MAX_SUBDIVISION:
        raise SubdivisionOutOfRange(
            f"subdivision {subdivision} outside [0, {MAX_SUBDIVISION}]"
        )
    verts, faces = _icosahedron()
    for _ in range(subdivision):
        verts, faces = _subdivide(verts, faces)
    v = np.array(verts, dtype=np.float64)
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    f = np.array(faces, dtype=np.int64)
    v.setflags(write=False)
    f.setflags(write=False)
    return v, f


def radius_field(directions, params: ShapeParams, seed: int) -> np.ndarray:
    """Radial displacement factor r(p) for an (N, 3) array of unit directions."""
    p = np.asarray(directions, dtype=np.float64)
    r = np.ones(len(p))
    if params.global_distortion != 0.0:
        r = r + params.global_distortion * noise3_field(
            p * params.global_frequency, seed ^ GLOBAL_SEED_SALT
        )
    if params.surface_distortion != 0.0:
        r = r + params.surface_distortion * noise3_field(
            p * params.surface_frequency + SURFACE_NOISE_OFFSET,
            seed ^ SURFACE_SEED_SALT,
        )
    if params.waves != 0:
        z = np.clip(p[:, 2], -1.0, 1.0)
        phi = np.arctan2(p[:, 1], p[:, 0])
        r = r + WAVE_AMPLITUDE * np.sin(params.waves * phi) * (1.0 - z * z)
    return r


def vertex_normals(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    """Area-weighted average of adjacent face normals, renormalized.

    Raw face cross products have length proportional to area, so summing
    them per vertex is the area weighting.
    """
    fv = vertices[faces]
    fn = np.cross(fv[:, 1] - fv[:, 0], fv[:, 2] - fv[:, 0])
    normals = np.zeros_like(vertices)
    for k in range(3):
        np.add.at(normals, faces[:, k], fn)
    lengths = np.linalg.norm(normals, axis=1, keepdims=True)
    return normals / lengths


def generate_mesh(spec: GenSpec) -> Mesh:
    """Generate the deformed-sphere mesh for a GenSpec.

    Pure and deterministic: the same spec always yields bit-identical arrays.
    """
    base, faces = unit_icosphere(spec.subdivision)
    r = radius_field(base, spec.params, spec.seed)
    vertices = base * r[:, None]
    normals = vertex_normals(vertices, faces)
    return Mesh(vertices=vertices, normals=normals, faces=faces.copy())


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _cell_params(row_frac: float, col_frac: float) -> ShapeParams:
    def span(pid: ShapeParameterId, frac: float) -> float:
        return pid.lo + frac * (pid.hi - pid.lo)

    return ShapeParams(
        waves=_round_half_up(span(ShapeParameterId.NUMBER_OF_WAVES, row_frac)),
        surface_distortion=span(ShapeParameterId.SURFACE_DISTORTION, row_frac),
        surface_frequency=span(ShapeParameterId.SURFACE_FREQUENCY, row_frac),
        global_distortion=span(ShapeParameterId.GLOBAL_DISTORTION, col_frac),
        global_frequency=span(ShapeParameterId.GLOBAL_FREQUENCY, col_frac),
    )


def legend_specs(rows: int, cols: int, seed: int = 0,
                 subdivision: int = 3) -> list[tuple[tuple[int, int], GenSpec]]:
    """Per-cell GenSpecs for a legend grid.

    Cell (i, j) drives the surface-texture group to fraction i/(rows-1) of
    full scale and the overall-shape group to fraction j/(cols-1); every cell
    shares the same seed.
    """
    if not (2 <= rows <= MAX_GRID and 2 <= cols <= MAX_GRID):
        raise GridTooLarge(f"grid {rows}x{cols} outside [2, {MAX_GRID}]")
    cells = []
    for i in range(rows):
        for j in range(cols):
            params = _cell_params(i / (rows - 1), j / (cols - 1))
            cells.append(((i, j), GenSpec(params, seed=seed, subdivision=subdivision)))
    return cells


def generate_legend(rows: int, cols: int, seed: int = 0,
                    subdivision: int = 3) -> list[tuple[tuple[int, int], GenSpec, Mesh]]:
    """Sample meshes for every legend cell (see legend_specs)."""
    return [(coords, spec, generate_mesh(spec))
            for coords, spec in legend_specs(rows, cols, seed, subdivision)]

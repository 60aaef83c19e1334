"""OBJ serialization: v/vn/f triangles with fixed 6-decimal coordinates."""

from __future__ import annotations

import numpy as np

from .errors import InvalidMesh
from .mesh import Mesh

OBJ_HEADER = "# phemotion shape export"


def _validate(mesh: Mesh) -> None:
    v = np.asarray(mesh.vertices, dtype=np.float64)
    n = np.asarray(mesh.normals, dtype=np.float64)
    f = np.asarray(mesh.faces)
    if v.ndim != 2 or v.shape[1] != 3 or len(v) == 0:
        raise InvalidMesh("vertices must be a non-empty (N, 3) array")
    if n.shape != v.shape:
        raise InvalidMesh("need exactly one normal per vertex")
    if not np.all(np.isfinite(v)) or not np.all(np.isfinite(n)):
        raise InvalidMesh("non-finite coordinates")
    if f.ndim != 2 or f.shape[1] != 3:
        raise InvalidMesh("faces must be an (M, 3) array")
    if f.size and (f.min() < 0 or f.max() >= len(v)):
        raise InvalidMesh("face index out of range")
    lengths = np.linalg.norm(n, axis=1)
    if np.any(np.abs(lengths - 1.0) > 1e-6):
        raise InvalidMesh("normals must have unit length")


def write_obj(mesh: Mesh) -> bytes:
    """Serialize a mesh as ASCII OBJ bytes.

    One header comment, then `v` lines, `vn` lines, and `f i//i j//j k//k`
    faces with 1-based indices. Coordinates always print with exactly six
    fractional digits, never in scientific notation, so identical meshes
    serialize byte-identically.
    """
    _validate(mesh)
    lines = [OBJ_HEADER]
    for x, y, z in np.asarray(mesh.vertices, dtype=np.float64):
        lines.append("v %.6f %.6f %.6f" % (x, y, z))
    for x, y, z in np.asarray(mesh.normals, dtype=np.float64):
        lines.append("vn %.6f %.6f %.6f" % (x, y, z))
    for a, b, c in np.asarray(mesh.faces):
        lines.append("f %d//%d %d//%d %d//%d" % (a + 1, a + 1, b + 1, b + 1, c + 1, c + 1))
    return ("\n".join(lines) + "\n").encode("ascii")

"""Seeded gradient noise: improved Perlin over a SplitMix64-shuffled table.

The permutation table is the only seed-dependent state. It is produced by a
Fisher-Yates shuffle driven by the SplitMix64 stream, so any implementation
that follows the same two algorithms reproduces identical noise fields.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB


def splitmix64_stream(seed: int):
    """Yield the SplitMix64 output sequence for a 64-bit seed."""
    state = seed & _MASK64
    while True:
        state = (state + _SPLITMIX_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _MIX_1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX_2) & _MASK64
        yield (z ^ (z >> 31)) & _MASK64


def permutation_table(seed: int) -> tuple[int, ...]:
    """256-entry permutation of 0..255, shuffled by SplitMix64 Fisher-Yates.

    The shuffle walks i from 255 down to 1 and swaps index i with
    j = next_output % (i + 1).
    """
    table = list(range(256))
    stream = splitmix64_stream(seed)
    for i in range(255, 0, -1):
        j = next(stream) % (i + 1)
        table[i], table[j] = table[j], table[i]
    return tuple(table)


@lru_cache(maxsize=128)
def _doubled_table(seed: int) -> np.ndarray:
    perm = np.array(permutation_table(seed) * 2, dtype=np.int64)
    perm.setflags(write=False)
    return perm


def _fade(t):
    # 6t^5 - 15t^4 + 10t^3
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def _grad(h, x, y, z):
    # Reference gradient set: 12 edge vectors of a cube, indexed by h & 15.
    h = h & 15
    u = np.where(h < 8, x, y)
    v = np.where(h < 4, y, np.where((h == 12) | (h == 14), x, z))
    return np.where(h & 1, -u, u) + np.where(h & 2, -v, v)


def noise3_field(points, seed: int) -> np.ndarray:
    """Evaluate improved Perlin noise at an (N, 3) array of points.

    Returns an (N,) float64 array clamped to [-1, 1]. Exactly zero at
    integer lattice points.
    """
    p = np.asarray(points, dtype=np.float64)
    if p.ndim != 2 or p.shape[1] != 3:
        raise ValueError("points must have shape (N, 3)")
    perm = _doubled_table(seed)

    cell = np.floor(p)
    xi, yi, zi = (cell.astype(np.int64) & 255).T
    frac = p - cell
    xf, yf, zf = frac.T
    u, v, w = _fade(xf), _fade(yf), _fade(zf)

    a = perm[xi] + yi
    aa = perm[a] + zi
    ab = perm[a + 1] + zi
    b = perm[xi + 1] + yi
    ba = perm[b] + zi
    bb = perm[b + 1] + zi

    n000 = _grad(perm[aa], xf, yf, zf)
    n100 = _grad(perm[ba], xf - 1.0, yf, zf)
    n010 = _grad(perm[ab], xf, yf - 1.0, zf)
    n110 = _grad(perm[bb], xf - 1.0, yf - 1.0, zf)
    n001 = _grad(perm[aa + 1], xf, yf, zf - 1.0)
    n101 = _grad(perm[ba + 1], xf - 1.0, yf, zf - 1.0)
    n011 = _grad(perm[ab + 1], xf, yf - 1.0, zf - 1.0)
    n111 = _grad(perm[bb + 1], xf - 1.0, yf - 1.0, zf - 1.0)

    x00 = n000 + u * (n100 - n000)
    x10 = n010 + u * (n110 - n010)
    x01 = n001 + u * (n101 - n001)
    x11 = n011 + u * (n111 - n011)
    y0 = x00 + v * (x10 - x00)
    y1 = x01 + v * (x11 - x01)
    return np.clip(y0 + w * (y1 - y0), -1.0, 1.0)


def noise3(point, seed: int) -> float:
    """Scalar convenience wrapper around noise3_field."""
    return float(noise3_field(np.asarray(point, dtype=np.float64).reshape(1, 3), seed)[0])

"""Deterministic low-discrepancy sampling of the unit disk.

A classic (unscrambled) Halton sequence in bases 2 and 3 is mapped to the
disk by area-uniform polar transport.  Hand-rolled rather than delegated so
that emitted reports stay byte-stable across library versions.
"""

from __future__ import annotations

import numpy as np

_cache: dict[tuple[int, float], np.ndarray] = {}


def _radical_inverse(count: int, base: int, start: int = 1) -> np.ndarray:
    idx = np.arange(start, start + count, dtype=np.int64)
    out = np.zeros(count)
    scale = 1.0 / base
    while np.any(idx > 0):
        out += scale * (idx % base)
        idx //= base
        scale /= base
    return out


def disk_samples(count: int, r_max: float = 1.0 - 1e-4) -> np.ndarray:
    """First ``count`` Halton points mapped to the disk of radius r_max."""
    key = (count, r_max)
    if key not in _cache:
        u = _radical_inverse(count, 2)
        v = _radical_inverse(count, 3)
        r = r_max * np.sqrt(u)
        _cache[key] = r * np.exp(2j * np.pi * v)
    return _cache[key]

"""Internal quadrature helpers.

Two kinds of integrals show up:

* real integrals on [0, r] for growth bounds -- handled by a plain
  recursive adaptive Simpson rule with a hard depth cap;
* complex path integrals along the segment [0, z] inside the unit disk,
  for reconstructing f and f' of integral-defined functions.  The
  integrands are analytic on the segment but their singularities sit on
  the unit circle, so the segment is split into dyadically graded panels
  accumulating toward the endpoint; each panel is handled by a 16-point
  Gauss-Legendre rule, whose distance-to-singularity then always exceeds
  the panel length and keeps the rule at machine precision.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from numpy.polynomial import legendre as _leg

_GL_N = 16
_GL_X, _GL_W = _leg.leggauss(_GL_N)

# Cumulative integration matrix on the Gauss-Legendre nodes: given values
# v_i = p(x_i), (CUM @ v)_j approximates the antiderivative of p from -1
# to x_j.  Built by mapping node values to Legendre coefficients and
# integrating the basis exactly.
_vander = _leg.legvander(_GL_X, _GL_N - 1)
_coeff_from_vals = np.linalg.inv(_vander)
_int_basis = np.empty((_GL_N, _GL_N))
for _k in range(_GL_N):
    _e = np.zeros(_GL_N)
    _e[_k] = 1.0
    _int_basis[:, _k] = _leg.legval(_GL_X, _leg.legint(_e, lbnd=-1))
_CUM = _int_basis @ _coeff_from_vals
del _vander, _coeff_from_vals, _int_basis, _e, _k


def _panel_breaks(max_abs: float) -> np.ndarray:
    """Dyadic breakpoints of [0, 1] accumulating toward t = 1."""
    depth = max(6, int(np.ceil(np.log2(1.0 / max(1e-15, 1.0 - max_abs)))) + 2)
    breaks = [0.0] + [1.0 - 2.0 ** (-m) for m in range(1, depth)] + [1.0]
    return np.array(breaks)


def segment_integral(func: Callable[[np.ndarray], np.ndarray], zs: np.ndarray) -> np.ndarray:
    """Integral of ``func`` along [0, z] for every z in ``zs``."""
    zs = np.asarray(zs, dtype=complex)
    flat = zs.ravel()
    out = np.zeros_like(flat)
    if flat.size:
        breaks = _panel_breaks(float(np.max(np.abs(flat))))
        for ta, tb in zip(breaks[:-1], breaks[1:]):
            half = 0.5 * (tb - ta)
            nodes = ta + half * (_GL_X + 1.0)
            w = flat[:, None] * nodes[None, :]
            out += (half * flat) * (func(w) @ _GL_W)
    return out.reshape(zs.shape)


def exp_path_integrals(
    p_func: Callable[[np.ndarray], np.ndarray],
    zs: np.ndarray,
    need_outer: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative integrals (G, F) along [0, z] with G' = p, F' = exp(G).

    G is the continuous antiderivative of ``p_func`` vanishing at 0 (for a
    log-derivative p this avoids any branch-cut ambiguity), and
    F(z) = integral of exp(G) along the same segment.  When ``need_outer``
    is false the second entry is returned as zeros and exp(G) is never
    formed.
    """
    zs = np.asarray(zs, dtype=complex)
    flat = zs.ravel()
    g = np.zeros_like(flat)
    f = np.zeros_like(flat)
    if flat.size:
        breaks = _panel_breaks(float(np.max(np.abs(flat))))
        for ta, tb in zip(breaks[:-1], breaks[1:]):
            half = 0.5 * (tb - ta)
            nodes = ta + half * (_GL_X + 1.0)
            w = flat[:, None] * nodes[None, :]
            pv = p_func(w)
            scale = half * flat
            if need_outer:
                g_nodes = g[:, None] + scale[:, None] * (pv @ _CUM.T)
                f += scale * (np.exp(g_nodes) @ _GL_W)
            g = g + scale * (pv @ _GL_W)
    return g.reshape(zs.shape), f.reshape(zs.shape)


def adaptive_simpson(
    func: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 30,
) -> float:
    """Recursive adaptive Simpson rule with Richardson correction."""
    if a == b:
        return 0.0
    fa, fb = func(a), func(b)
    m = 0.5 * (a + b)
    fm = func(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_rec(func, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_rec(func, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = func(lm)
    frm = func(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    err = (left + right - whole) / 15.0
    if depth <= 0 or abs(err) <= tol:
        return left + right + err
    return _simpson_rec(func, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_rec(
        func, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def richardson_limit(values: np.ndarray) -> float:
    """Limit of v(h) as h -> 0 from samples at h0, h0/2, h0/4, ...

    Neville elimination of the h, h^2, ... terms assuming a smooth
    expansion; ``values[k]`` is the sample at step ``h0 * 2**-k``.
    """
    t = [float(v) for v in values]
    n = len(t)
    for j in range(1, n):
        fac = 2.0**j
        for i in range(n - 1, j - 1, -1):
            t[i] = (fac * t[i] - t[i - 1]) / (fac - 1.0)
    return t[-1]

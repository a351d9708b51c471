"""Random continuation paths and their conditioning, shared by the engine
tests and the acceptance gate.

Values along a path can reach e^400 in a 4x4 box, so every quantity is
kept as (mantissa, log scale). An error made at t is carried to the end by
Phi(t -> end) = Phi(end) Phi(t)^-1, where Phi holds the solutions through
(1, 0) and (0, 1); kappa = max_t |Phi(t -> end)| |X(t)| sets the size of
the rounding floor at the end of the path.
"""

from __future__ import annotations

import math

import numpy as np

from anharmonic.ode import OdeState, propagate_path
from anharmonic.polynomial import EvenPolynomial


def random_sextic(rng) -> tuple[EvenPolynomial, float]:
    c = rng.uniform(-3, 3, 3)
    P = EvenPolynomial((c[0], c[1], c[2], rng.uniform(0.5, 2.0)))
    return P, float(rng.uniform(-5, 10))


def random_polyline(rng, half: float = 4.0, max_vertices: int = 5) -> list[complex]:
    n = int(rng.integers(1, max_vertices + 1))
    return [complex(*rng.uniform(-half, half, 2)) for _ in range(n)]


def refine(path, start: complex = 0j, h: float = 0.05) -> list[complex]:
    """Same polyline with vertices every h, so peaks along segments are seen."""
    out = []
    z0 = start
    for z in path:
        n = max(1, math.ceil(abs(z - z0) / h))
        out += [z0 + (z - z0) * k / n for k in range(1, n + 1)]
        z0 = z
    return out


def _log_abs_diff(x, lx, y, ly) -> float:
    """log |x e^lx - y e^ly|."""
    m = max(lx, ly)
    v = abs(x * math.exp(lx - m) - y * math.exp(ly - m))
    return -math.inf if v == 0 else math.log(v) + m


def _log_norm(logs) -> float:
    finite = [2 * v for v in logs if v > -math.inf]
    if not finite:
        return -math.inf
    m = max(finite)
    return 0.5 * (m + math.log(sum(math.exp(v - m) for v in finite)))


def transport(P, lam, path):
    """Fundamental pair along a refined path: lists of states for (1,0) and (0,1)."""
    pts = refine(path)
    a = propagate_path(P, lam, OdeState(0j, 1.0, 0.0), pts)
    b = propagate_path(P, lam, OdeState(0j, 0.0, 1.0), pts)
    return a, b


def wronskian_drift(a, b) -> float:
    """max_t |W(t) - 1|, relative to the largest |y1 y2'| + |y2 y1'| seen so far."""
    peak = -math.inf
    worst = 0.0
    for sa, sb in zip(a, b):
        w = sa.y * sb.dy - sb.y * sa.dy
        lw = sa.log + sb.log
        scale = abs(sa.y * sb.dy) + abs(sb.y * sa.dy)
        peak = max(peak, math.log(scale) + lw)
        worst = max(worst, math.exp(_log_abs_diff(w, lw, 1.0, 0.0) - peak))
    return worst


def _combine(y0, dy0, sa, sb):
    """State of the solution through (y0, dy0) as (y, dy, log)."""
    m = max(sa.log, sb.log)
    fa, fb = math.exp(sa.log - m), math.exp(sb.log - m)
    return y0 * sa.y * fa + dy0 * sb.y * fb, y0 * sa.dy * fa + dy0 * sb.dy * fb, m


def log_kappa(P, lam, path, a, b, init) -> float:
    """log of max_t |Phi(t -> end)| |X(t)|.

    For 2x2 matrices of determinant one the inverse has the same Frobenius
    norm, so |Phi(t -> end)| = |Phi(end -> t)|, which comes from running the
    unit basis backwards from the end point without any cancellation.
    """
    pts = [0j] + refine(path)
    back = pts[-2::-1]
    ra = propagate_path(P, lam, OdeState(pts[-1], 1.0, 0.0), back)[::-1]
    rb = propagate_path(P, lam, OdeState(pts[-1], 0.0, 1.0), back)[::-1]
    best = -math.inf
    for at, bt, sa, sb in zip(a, b, ra, rb):
        norm = _log_norm([math.log(abs(v)) + s.log if v != 0 else -math.inf
                          for s in (sa, sb) for v in (s.y, s.dy)])
        y, dy, lx = _combine(*init, at, bt)
        size = abs(y) + abs(dy)
        if size > 0:
            best = max(best, norm + math.log(size) + lx)
    return best


def path_discrepancy(P, lam, init, path_a, path_b) -> float:
    """Difference of the two continuations to the common end point, relative
    to the larger of the two condition numbers."""
    if abs(path_a[-1] - path_b[-1]) > 1e-12:
        raise ValueError("paths must end at the same point")
    a1, b1 = transport(P, lam, path_a)
    a2, b2 = transport(P, lam, path_b)
    y1, dy1, l1 = _combine(*init, a1[-1], b1[-1])
    y2, dy2, l2 = _combine(*init, a2[-1], b2[-1])
    diff = _log_norm([_log_abs_diff(y1, l1, y2, l2), _log_abs_diff(dy1, l1, dy2, l2)])
    kappa = max(log_kappa(P, lam, path_a, a1, b1, init),
                log_kappa(P, lam, path_b, a2, b2, init))
    return math.exp(diff - kappa) if diff > -math.inf else 0.0

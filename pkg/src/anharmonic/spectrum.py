"""Shooting solver for the real spectrum ``lam_0 < lam_1 < ...`` of ``-y'' + P y = lam y``."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _kernels as K
from .ode import DEFAULT_HMIN, DEFAULT_ORDER, DEFAULT_TOL, Parity, StepUnderflow
from .polynomial import EvenPolynomial

MIN_EXCESS = 25.0  # P(R) - lam
MIN_ACTION = 40.0  # integral of sqrt(P - lam) up to R


class RadiusTooSmall(ValueError):
    """The shooting radius is not in the classically forbidden region."""


class ConvergenceFailure(RuntimeError):
    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (last bracket {bracket[0]!r}, {bracket[1]!r})")
        self.bracket = bracket


@dataclass(frozen=True)
class Eigenpair:
    k: int
    lam: float
    parity: Parity
    real_zero_count: int
    radius_used: float

    def to_dict(self) -> dict:
        return {"k": self.k, "lambda": self.lam, "real_zero_count": self.real_zero_count,
                "parity": self.parity.value, "radius_used": self.radius_used}


def _excess(P: EvenPolynomial, lam: float, r: float) -> float:
    return float(P(r)) - lam


def turning_point(P: EvenPolynomial, lam: float) -> float:
    """Largest x >= 0 with P(x) = lam, or 0 when P > lam on the whole half-line."""
    c = P.coeffs.copy()
    c[0] -= lam
    roots = np.polynomial.polynomial.polyroots(c)
    real = [r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r)) and r.real > 0]
    return max(real, default=0.0)


def shooting_radius(P: EvenPolynomial, lam: float) -> float:
    """Smallest R with ``P(R) - lam >= 25`` and ``int_0^R sqrt(max(P - lam, 0)) >= 40``."""
    t = turning_point(P, lam)
    hi = max(t, 1.0) * 1.1 + 0.5
    while True:
        x = np.linspace(t, hi, 4001)
        excess = np.asarray(P(x)).real - lam
        f = np.sqrt(np.maximum(excess, 0.0))
        action = np.concatenate([[0.0], np.cumsum(0.5 * (f[1:] + f[:-1]) * np.diff(x))])
        ok = np.nonzero((excess >= MIN_EXCESS) & (action >= MIN_ACTION))[0]
        if len(ok):
            return float(x[ok[0]])
        hi *= 1.5


def _forward(P: EvenPolynomial, lam: float, parity: Parity, r: float, record: bool):
    y0, dy0 = parity.initial
    Y, DY, logs, st, ts, ys = K.march(
        P.shifted(lam), 0j, complex(r), np.array([complex(y0)]), np.array([complex(dy0)]),
        DEFAULT_TOL, DEFAULT_ORDER, DEFAULT_HMIN, not record, record)
    if st:
        raise StepUnderflow(f"step underflow on [0, {r}] at lam={lam}")
    return Y[0].real, DY[0].real, ts, ys.real


def _inward(P: EvenPolynomial, lam: float, R: float, rm: float):
    """Solution decaying at +infinity, launched at R with WKB data, at rm."""
    zm = complex(rm)
    _, _, v, dv, _, st = K.recessive_run(P.shifted(lam), zm, zm, zm, complex(R),
                                         DEFAULT_TOL, DEFAULT_ORDER, DEFAULT_HMIN)
    if st:
        raise StepUnderflow(f"step underflow on [{rm}, {R}] at lam={lam}")
    return v.real, dv.real


def _sign_changes(values: np.ndarray) -> int:
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _nodes(count: int, parity: Parity) -> int:
    return 2 * count + (1 if parity is Parity.ODD else 0)


def node_count(P: EvenPolynomial, lam: float, R: float, parity: Parity) -> int:
    """Total sign changes of the parity solution on (-R, R)."""
    if _excess(P, lam, R) <= 0:
        raise RadiusTooSmall(f"P(R) <= lambda at R={R}")
    _, _, _, ys = _forward(P, lam, parity, R, True)
    return _nodes(_sign_changes(ys), parity)


def _match(P: EvenPolynomial, lam: float, R: float, parity: Parity):
    if _excess(P, lam, R) <= 0:
        raise RadiusTooSmall(f"P(R) <= lambda at R={R}")
    rm = min(turning_point(P, lam), R)
    y, dy, _, _ = _forward(P, lam, parity, rm, False)
    v, dv = _inward(P, lam, R, rm)
    return y, dy, v, dv


def miss(P: EvenPolynomial, lam: float, R: float, parity: Parity) -> float:
    """Log-derivative mismatch between the parity solution and the solution
    decaying at +infinity, taken at the last turning point.

    Zero exactly at eigenvalues of the given parity.
    """
    y, dy, v, dv = _match(P, lam, R, parity)
    if y == 0:
        return math.inf
    return dy / y - dv / v


def discriminant(P: EvenPolynomial, lam: float, R: float, parity: Parity) -> float:
    """Normalised Wronskian of the parity solution and the decaying solution.

    Smooth in lam, bounded by 1, with simple zeros at the eigenvalues.
    """
    y, dy, v, dv = _match(P, lam, R, parity)
    norm = abs(y * dv) + abs(dy * v)
    return (y * dv - dy * v) / norm if norm else 0.0


def _bracket(P: EvenPolynomial, k: int, radius: float | None):
    """Return (lo, hi, R) with node counts k at lo and k + 2 at hi."""
    parity = Parity.of_index(k)
    lo = P.real_minimum() - 1.0
    # an irrational step keeps the probes off exactly representable eigenvalues
    step = max(1.0, abs(lo)) * (1.0 + math.sqrt(2.0) / 10.0)
    hi = lo + step

    def count(lam):
        R = radius if radius is not None else shooting_radius(P, lam)
        return node_count(P, lam, R, parity)

    while count(hi) < k + 2:
        lo = hi
        step *= 2.0
        hi = lo + step
    nlo = count(lo)
    if nlo > k:
        lo = P.real_minimum() - 1.0
        nlo = count(lo)
    nhi = count(hi)
    for _ in range(200):
        if nlo == k and nhi == k + 2:
            break
        mid = 0.5 * (lo + hi)
        n = count(mid)
        if n <= k:
            lo, nlo = mid, n
        else:
            hi, nhi = mid, n
    else:
        raise ConvergenceFailure(f"could not isolate eigenvalue {k}", (lo, hi))
    R = radius if radius is not None else shooting_radius(P, hi)
    return lo, hi, R


def eigenpair(P: EvenPolynomial, k: int, tol: float = 1e-12,
              radius: float | None = None) -> Eigenpair:
    """The k-th eigenvalue of P, indexed by its number of real zeros."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    parity = Parity.of_index(k)
    lo, hi, R = _bracket(P, k, radius)
    f = lambda lam: discriminant(P, lam, R, parity)
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        # the node counts guarantee a root; look inside, then at the endpoints
        grid = np.linspace(lo, hi, 65)
        vals = np.array([f(x) for x in grid])
        flips = np.nonzero(np.sign(vals[1:]) != np.sign(vals[:-1]))[0]
        if len(flips):
            lo, hi = grid[flips[0]], grid[flips[0] + 1]
            flo, fhi = vals[flips[0]], vals[flips[0] + 1]
    if flo * fhi > 0:
        lam = lo if abs(flo) < abs(fhi) else hi
        if min(abs(flo), abs(fhi)) > 1e-8:
            raise ConvergenceFailure(f"discriminant does not change sign for k={k}", (lo, hi))
    else:
        try:
            lam = brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)
        except RuntimeError as exc:
            raise ConvergenceFailure(str(exc), (lo, hi)) from exc
    # zeros of an eigenfunction all lie before the last turning point
    rm = turning_point(P, lam)
    _, _, _, ys = _forward(P, lam, parity, rm, True) if rm > 0 else (0, 0, 0, np.array([1.0]))
    count = _nodes(_sign_changes(ys), parity)
    if count != k:
        raise ConvergenceFailure(f"eigenfunction {k} has {count} real zeros", (lo, hi))
    return Eigenpair(k, float(lam), parity, count, float(R))


def eigenvalues(P: EvenPolynomial, K: int, tol: float = 1e-12, radius: float | None = None,
                workers: int = 1) -> list[Eigenpair]:
    """Eigenpairs for k = 0..K, ordered by k."""
    if K < 0:
        raise ValueError("K must be non-negative")
    ks = range(K + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(lambda k: eigenpair(P, k, tol, radius), ks))
    else:
        out = [eigenpair(P, k, tol, radius) for k in ks]
    for a, b in zip(out, out[1:]):
        if not b.lam > a.lam:
            raise ConvergenceFailure("eigenvalues not strictly increasing", (a.lam, b.lam))
    return out

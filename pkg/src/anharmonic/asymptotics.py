"""Asymptotic values of ``f = y / y1`` in the Stokes sectors.

Along the bisector of sector ``S_j`` the ratio of the eigenfunction ``y`` and
the complementary solution ``y1`` tends to a limit ``a_j`` exponentially fast.
The limits obey ``a_j = conj(a_{-j})`` and ``a_j = -conj(a_{d/2+1-j})``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .ode import DEFAULT_HMIN, DEFAULT_ORDER, DEFAULT_TOL, Parity
from .polynomial import EvenPolynomial

GROWTH = 20.0  # growth exponent at the inner sampling radius
STRETCH = 1.2
MAX_STRETCHES = 6  # automatic radii tried per sector
NOISE = 1e-12  # relative Wronskian size treated as zero


class NotStabilized(ArithmeticError):
    """The ratio has not settled at the chosen radii."""


def normalized_pair(P: EvenPolynomial, lam: float, parity: Parity):
    """Initial data (y, y1) at the origin; y carries the eigenfunction parity.

    With these choices ``f = y / y1`` is odd and ``W(y, y1)(0) = -1`` for even
    y, ``+1`` for odd y.
    """
    if parity is Parity.EVEN:
        return (1.0, 0.0), (0.0, 1.0)
    return (0.0, 1.0), (1.0, 0.0)


@dataclass(frozen=True)
class AsymptoticTable:
    d: int
    values: tuple[complex, ...]
    radius: float
    parity_of_y: Parity

    def __getitem__(self, j: int) -> complex:
        return self.values[j % (self.d + 2)]

    def symmetry_defects(self) -> dict[str, float]:
        """Largest relative violations of the symmetry relations."""
        n = self.d + 2
        half = self.d // 2 + 1
        conj = max(abs(self[j] - self[-j].conjugate()) / (1 + abs(self[j])) for j in range(n))
        refl = max(abs(self[j] + self[half - j].conjugate()) / (1 + abs(self[j])) for j in range(n))
        zeros = max(abs(self[0]), abs(self[half]))
        return {"conjugation": conj, "reflection": refl, "vanishing": zeros}

    def adjacent_gap(self) -> float:
        n = self.d + 2
        return min(abs(self[j] - self[j + 1]) for j in range(n))

    def to_dict(self) -> dict:
        return {"d": self.d, "radius": self.radius, "parity": self.parity_of_y.value,
                "values": [[v.real, v.imag] for v in self.values]}


class _Ratio:
    """Limit of f = y / y1 in a sector, read off from Wronskians.

    With v the solution decaying in sector j, y = A v + B y1 and v / y1 -> 0
    there, so f -> B = W(v, y) / W(v, y1). v is launched on the bisector at
    radius R and carried inward; y and y1 are carried out from the origin.
    Both meet at the outer turning radius, where neither has been integrated
    in its unstable direction. A Wronskian at round-off level relative to
    the local size of the pair means y itself decays in the sector, and the
    limit is exactly 0; near-degenerate levels make the ratio there pure
    noise otherwise.
    """

    def __init__(self, P: EvenPolynomial, lam: float, parity: Parity):
        self.P = P
        self.iy, self.iy1 = normalized_pair(P, lam, parity)
        self.coeffs = P.shifted(lam).astype(complex)
        self.r_out = float(np.max(np.abs(np.roots(self.coeffs[::-1]))))

    def omega(self, j: int) -> complex:
        return complex(np.exp(2j * math.pi * j / (self.P.degree + 2)))

    def __call__(self, j: int, R: float) -> tuple[complex, bool]:
        """(W(v, y) / W(v, y1), whether y decays in sector j) for launch radius R."""
        zm = self.omega(j) * min(self.r_out, R / STRETCH)
        _, _, v, dv, _, st = K.recessive_run(self.coeffs, zm, zm, zm, self.omega(j) * R,
                                             DEFAULT_TOL, DEFAULT_ORDER, DEFAULT_HMIN)
        Y0 = np.array([self.iy[0], self.iy1[0]], dtype=complex)
        D0 = np.array([self.iy[1], self.iy1[1]], dtype=complex)
        Y, D, _, st2, _, _ = K.march(self.coeffs, 0j, zm, Y0, D0, DEFAULT_TOL, DEFAULT_ORDER,
                                     DEFAULT_HMIN, False, False)
        if st or st2:
            raise NotStabilized(f"sector {j}: step underflow launching from R = {R:.4g}")
        w = v * D[0] - dv * Y[0]
        w1 = v * D[1] - dv * Y[1]
        scale = abs(v * D[0]) + abs(dv * Y[0])
        if abs(w) <= NOISE * scale:
            return 0j, True
        if w1 == 0:
            return complex("nan"), False
        return complex(w / w1), False

    def bisector_radius(self, j: int) -> float:
        return K.ray_radius(self.coeffs, self.omega(j), GROWTH, 1.0)


def _stabilized(ratio: _Ratio, j: int, R: float, tol: float) -> complex:
    (f1, dec1), (f2, dec2) = ratio(j, R), ratio(j, STRETCH * R)
    if dec1 and dec2:
        return 0j
    # a vanishing limit is judged at the outer radius
    if abs(f2) < tol and (abs(f2) <= abs(f1) or abs(f1) < tol):
        return 0j
    if not (np.isfinite(f1) and np.isfinite(f2)) or abs(f1 - f2) > tol * max(1.0, abs(f2)):
        raise NotStabilized(f"sector {j}: f({R:.4g}) = {f1}, f({STRETCH * R:.4g}) = {f2}")
    return complex(f2)


def _settled(ratio: _Ratio, j: int, R: float | None, tol: float) -> tuple[complex, float]:
    """(value, radius used). A chosen R is tried once; the automatic radius
    moves outwards while the ratio still drifts, since deep wells push the
    outer turning point past the first guess."""
    if R is not None:
        return _stabilized(ratio, j, R, tol), R
    radius = ratio.bisector_radius(j)
    for _ in range(MAX_STRETCHES - 1):
        try:
            return _stabilized(ratio, j, radius, tol), radius
        except NotStabilized:
            radius *= STRETCH
    return _stabilized(ratio, j, radius, tol), radius


def asymptotic_value(P: EvenPolynomial, lam: float, parity: Parity, j: int,
                     R: float | None = None, tol: float = 1e-8) -> complex:
    """Limit of y / y1 along the bisector of sector j."""
    return _settled(_Ratio(P, lam, parity), j, R, tol)[0]


def table(P: EvenPolynomial, lam: float, parity: Parity, R: float | None = None,
          tol: float = 1e-8) -> AsymptoticTable:
    ratio = _Ratio(P, lam, parity)
    found = [_settled(ratio, j, R, tol) for j in range(P.degree + 2)]
    return AsymptoticTable(P.degree, tuple(v for v, _ in found),
                           float(max(r for _, r in found)), parity)


def g(k: int, m: int, p: int, b: float, tol: float = 1e-8) -> float:
    """Argument of the sector-1 asymptotic value for the QES eigenpair (k, m, p, b)."""
    from .qes import QesSpec, qes_solve

    if not 0 <= k <= m:
        raise ValueError("k must lie in 0..m")
    spec = QesSpec(m, p, b)
    sol = qes_solve(spec)[k]
    a = asymptotic_value(spec.potential, sol.lam, spec.parity, 1, tol=tol)
    return math.atan2(a.imag, a.real)


@dataclass(frozen=True)
class Scan:
    samples: tuple[tuple[float, float], ...]

    @property
    def covered(self) -> tuple[float, float]:
        vals = [v for _, v in self.samples]
        return (min(vals), max(vals))

    @property
    def width(self) -> float:
        lo, hi = self.covered
        return hi - lo

    @property
    def max_jump(self) -> float:
        vals = [v for _, v in self.samples]
        return max((abs(a - b) for a, b in zip(vals, vals[1:])), default=0.0)


def surjectivity_scan(k: int, m: int, p: int, b_grid, tol: float = 1e-8) -> Scan:
    """Sample g over a sorted grid of b values."""
    grid = [float(b) for b in b_grid]
    if grid != sorted(grid):
        raise ValueError("b grid must be sorted")
    return Scan(tuple((b, g(k, m, p, b, tol)) for b in grid))

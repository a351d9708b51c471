"""Quasi-exactly solvable sextics ``z^6 + 2b z^4 + (b^2 - 4m - 2p - 3) z^2``.

For these potentials ``m + 1`` eigenfunctions have the closed form
``y = z^p Qt(z^2) exp(-z^4/4 - b z^2/2)`` with ``Qt`` a polynomial of degree m.
Writing ``Qt(u) = sum_i c_i u^i`` and substituting into the equation gives a
three-term action on the coefficients:

    (M c)_i = b(4i+2p+1) c_i - (2i+p+2)(2i+p+1) c_{i+1} + 4(i-1-m) c_{i-1}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq

from .ode import Parity
from .polynomial import EvenPolynomial, qes_potential


class DegenerateEigenvalue(ArithmeticError):
    pass


class ZeroRoot(ValueError):
    pass


class ConstraintViolation(AssertionError):
    pass


class Mismatch(AssertionError):
    def __init__(self, message: str, expected, got):
        super().__init__(f"{message}: expected {expected!r}, got {got!r}")
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class QesSpec:
    m: int
    p: int
    b: float

    def __post_init__(self):
        if self.p not in (0, 1):
            raise ValueError("p must be 0 or 1")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError("m must be a non-negative integer")

    @property
    def potential(self) -> EvenPolynomial:
        return qes_potential(self.m, self.p, self.b)

    @property
    def parity(self) -> Parity:
        return Parity.ODD if self.p else Parity.EVEN


@dataclass(frozen=True)
class QesSolution:
    spec: QesSpec
    k: int
    lam: float
    q_coeffs: tuple[float, ...]
    u_roots: tuple[float, ...]
    residual: float

    @property
    def index(self) -> int:
        """Position of the eigenvalue in the full spectrum."""
        return 2 * self.k + self.spec.p

    def y(self, z):
        """Closed-form eigenfunction (normalised so that Qt is monic)."""
        z = np.asarray(z, dtype=complex)
        g = z ** self.spec.p * npoly.polyval(z * z, self.q_coeffs)
        return g * np.exp(-z ** 4 / 4 - self.spec.b * z * z / 2)

    def to_dict(self) -> dict:
        real, imag = lift_zeros(self, self.spec.p)
        m_tree, n_tree = classify(self, self.spec.p)
        return {
            "m": self.spec.m, "p": self.spec.p, "b": self.spec.b, "k": self.k,
            "index": self.index, "lambda": self.lam, "q_coeffs": list(self.q_coeffs),
            "u_roots": list(self.u_roots), "residual": self.residual,
            "real_zeros": real, "imaginary_zeros": imag,
            "classification": {"m": m_tree, "n": n_tree},
        }


def _bands(spec: QesSpec):
    m, p, b = spec.m, spec.p, float(spec.b)
    i = np.arange(m + 1)
    diag = b * (4 * i + 2 * p + 1)
    upper = -(2 * i[:-1] + p + 2) * (2 * i[:-1] + p + 1.0)  # row i, column i + 1
    lower = 4.0 * (i[1:] - 1 - m)  # row i, column i - 1
    return diag, upper, lower


def qes_matrix(spec: QesSpec) -> np.ndarray:
    diag, upper, lower = _bands(spec)
    return np.diag(diag) + np.diag(upper, 1) + np.diag(lower, -1)


def _sturm_count(diag, off2, x: float) -> int:
    """Eigenvalues below x of the symmetric tridiagonal with squared off-diagonals off2."""
    count = 0
    q = 1.0
    # smallest pivot allowed, as in LAPACK's bisection
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(off2, initial=0.0)))
    for i in range(len(diag)):
        q = diag[i] - x - (off2[i - 1] / q if i else 0.0)
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def tridiagonal_eigenvalues(diag, upper, lower) -> np.ndarray:
    """All eigenvalues, ascending, by Sturm-count bisection.

    Requires ``upper[i] * lower[i] > 0`` so that the matrix is similar to a
    symmetric one and the spectrum is real.
    """
    off2 = np.asarray(upper) * np.asarray(lower)
    if np.any(off2 <= 0):
        raise ValueError("off-diagonal products must be positive")
    n = len(diag)
    e = np.sqrt(off2)
    rad = np.zeros(n)
    rad[:-1] += e
    rad[1:] += e
    lo0 = float(np.min(diag - rad)) - 1.0
    hi0 = float(np.max(diag + rad)) + 1.0
    out = np.empty(n)
    for k in range(n):
        lo, hi = lo0, hi0
        while hi - lo > 4 * np.finfo(float).eps * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if _sturm_count(diag, off2, mid) > k:
                hi = mid
            else:
                lo = mid
        out[k] = 0.5 * (lo + hi)
    return out


def _null_vector(diag, upper, lower, lam: float) -> np.ndarray:
    """Coefficients with c_m = 1 solving the rows 1..m backwards."""
    m = len(diag) - 1
    c = np.zeros(m + 1)
    c[m] = 1.0
    for i in range(m, 0, -1):
        acc = (diag[i] - lam) * c[i]
        if i < m:
            acc += upper[i] * c[i + 1]
        c[i - 1] = -acc / lower[i - 1]
    return c


def _residual(spec: QesSpec, lam: float, c: np.ndarray) -> float:
    """max |-y'' + (P - lam) y| / max(1, |y|) on both axes, by exact differentiation."""
    t = np.linspace(-4.0, 4.0, 401)
    z = np.concatenate([t, 1j * t]).astype(complex)
    p, b = spec.p, spec.b
    # g(z) = z^p Qt(z^2) as an ordinary polynomial in z
    g = np.zeros(2 * len(c) - 1 + p)
    g[p::2] = c
    g1 = npoly.polyder(g)
    g2 = npoly.polyder(g, 2)
    T1 = -z ** 3 - b * z
    T2 = -3 * z ** 2 - b
    e = np.exp(-z ** 4 / 4 - b * z * z / 2)
    gv, g1v, g2v = npoly.polyval(z, g), npoly.polyval(z, g1), npoly.polyval(z, g2)
    y = gv * e
    ypp = (g2v + 2 * g1v * T1 + gv * (T2 + T1 * T1)) * e
    P = spec.potential
    res = -ypp + (P(z) - lam) * y
    return float(np.max(np.abs(res) / np.maximum(1.0, np.abs(y))))


def _sturm_chain(c: np.ndarray) -> list[np.ndarray]:
    chain = [np.asarray(c, float), npoly.polyder(c)]
    while len(chain[-1]) > 1:
        _, r = npoly.polydiv(chain[-2], chain[-1])
        r = npoly.polytrim(-r, tol=0)
        if len(r) == 1 and r[0] == 0:
            break
        chain.append(r)
    return chain


def _variations(chain, x: float) -> int:
    vals = [npoly.polyval(x, p) for p in chain]
    signs = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def real_roots(c) -> tuple[float, ...]:
    """Real roots of a real polynomial with simple real roots, certified.

    Roots are isolated with a Sturm chain and each one is certified by a sign
    change of the polynomial itself, so the count is not an artefact of
    rounding in the chain.
    """
    c = npoly.polytrim(np.asarray(c, float), tol=0)
    deg = len(c) - 1
    if deg <= 0:
        return ()
    bound = 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))
    chain = _sturm_chain(c)
    intervals = []

    def split(lo, hi, vlo, vhi, depth=0):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1 and np.sign(npoly.polyval(lo, c)) * np.sign(npoly.polyval(hi, c)) < 0:
            intervals.append((lo, hi))
            return
        if depth > 200:
            raise ArithmeticError("root isolation did not converge")
        mid = 0.5 * (lo + hi)
        # never split on a root: the sign certificate needs nonzero ends
        shift = 1
        while npoly.polyval(mid, c) == 0.0:
            mid = lo + (hi - lo) * (0.5 + 1e-3 * shift)
            shift += 1
        vm = _variations(chain, mid)
        split(lo, mid, vlo, vm, depth + 1)
        split(mid, hi, vm, vhi, depth + 1)

    split(-bound, bound, _variations(chain, -bound), _variations(chain, bound))
    f = lambda x: npoly.polyval(x, c)
    roots = tuple(sorted(float(brentq(f, a, b, xtol=1e-15, rtol=1e-15)) for a, b in intervals))
    if len(roots) != deg:
        raise ArithmeticError(f"certified {len(roots)} real roots of a degree {deg} polynomial")
    return roots


def qes_solve(spec: QesSpec) -> list[QesSolution]:
    """The m + 1 closed-form eigenpairs, sorted by eigenvalue."""
    if spec.m == 0:
        lams = np.array([spec.b * (2 * spec.p + 1.0)])
        diag, upper, lower = _bands(spec)
    else:
        diag, upper, lower = _bands(spec)
        lams = tridiagonal_eigenvalues(diag, upper, lower)
    gaps = np.diff(lams)
    if np.any(gaps < 1e-12):
        raise DegenerateEigenvalue(f"eigenvalues coincide for {spec}")
    out = []
    for k, lam in enumerate(lams):
        c = _null_vector(diag, upper, lower, float(lam))
        out.append(QesSolution(spec, k, float(lam), tuple(float(x) for x in c),
                               real_roots(c), _residual(spec, float(lam), c)))
    return out


def lift_zeros(sol: QesSolution, p: int | None = None) -> tuple[list[float], list[float]]:
    """Zeros of the eigenfunction from the roots of Qt.

    A root u > 0 gives real zeros at +-sqrt(u), a root u < 0 gives zeros at
    +-i sqrt(|u|); the imaginary list holds the real numbers t.
    """
    p = sol.spec.p if p is None else p
    if any(abs(u) < 1e-12 for u in sol.u_roots):
        raise ZeroRoot("Qt vanishes at the origin")
    real = [s * math.sqrt(u) for u in sol.u_roots if u > 0 for s in (-1, 1)]
    imag = [s * math.sqrt(-u) for u in sol.u_roots if u < 0 for s in (-1, 1)]
    if p == 1:
        real.append(0.0)
    return sorted(real), sorted(imag)


def classify(sol: QesSolution, p: int | None = None) -> tuple[int, int]:
    """(total zeros, real zeros) of the eigenfunction, as (m, n) tree parameters."""
    p = sol.spec.p if p is None else p
    positive = sum(1 for u in sol.u_roots if u > 0)
    m_tree = 2 * sol.spec.m + p
    n_tree = 2 * positive + p
    if not (0 <= n_tree <= m_tree and (m_tree - n_tree) % 2 == 0):
        raise ConstraintViolation(f"invalid tree parameters ({m_tree}, {n_tree})")
    return m_tree, n_tree


@dataclass
class CrossCheck:
    spec: QesSpec
    k: int
    lam_qes: float
    lam_shooting: float
    real_expected: list[float]
    real_found: list[float]
    imag_expected: list[float]
    imag_found: list[float]
    confined: bool
    consistent: bool
    tol: float
    zero_tol: float = 1e-5
    notes: list[str] = field(default_factory=list)

    @property
    def lambda_ok(self) -> bool:
        return abs(self.lam_qes - self.lam_shooting) <= self.tol

    @property
    def zeros_ok(self) -> bool:
        return _set_match(self.real_expected, self.real_found, self.zero_tol) and \
            _set_match(self.imag_expected, self.imag_found, self.zero_tol)

    @property
    def ok(self) -> bool:
        return self.lambda_ok and self.zeros_ok and self.confined and self.consistent

    def to_dict(self) -> dict:
        return {
            "m": self.spec.m, "p": self.spec.p, "b": self.spec.b, "k": self.k,
            "lambda_qes": self.lam_qes, "lambda_shooting": self.lam_shooting,
            "lambda_ok": self.lambda_ok, "zeros_ok": self.zeros_ok,
            "confined": self.confined, "consistent": self.consistent, "ok": self.ok,
        }


def _set_match(a, b, tol) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))


def cross_check(spec: QesSpec, k: int, tol: float = 1e-6, strict: bool = True) -> CrossCheck:
    """Compare the closed form with the shooting solver and the zero census."""
    from .spectrum import eigenpair
    from .zeros import Box, census, verify_axis_confinement

    if not 0 <= k <= spec.m:
        raise ValueError("k out of range")
    sol = qes_solve(spec)[k]
    P = spec.potential
    pair = eigenpair(P, sol.index, tol=min(tol, 1e-10) * 1e-2)
    real, imag = lift_zeros(sol)
    reach = max([abs(x) for x in real + imag] + [0.0])
    half = max(3.0, reach + 1.0)
    c = census(P, pair.lam, spec.parity, Box(half, half), tol=1e-6, k=pair.k, locate=False)
    report = CrossCheck(spec, k, sol.lam, pair.lam, real, c.real_zeros, imag, c.imaginary_zeros,
                        verify_axis_confinement(c), c.consistent, tol)
    if strict and not report.ok:
        raise Mismatch(f"closed form disagrees with numerics for {spec}, k={k}",
                       (sol.lam, real, imag), (pair.lam, c.real_zeros, c.imaginary_zeros))
    return report

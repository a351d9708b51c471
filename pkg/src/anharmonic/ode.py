"""Transport of solutions of ``-y'' + (P - lam) y = 0`` across the complex plane."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .polynomial import EvenPolynomial

DEFAULT_ORDER = 30
DEFAULT_HMIN = 1e-12
DEFAULT_TOL = 1e-14

# growth exponent beyond which outward transport of a recessive solution is distrusted
FORWARD_ACTION = 4.5
# extra decay used to wash out the starting error of inward integration
INWARD_MARGIN = 18.0


class StepUnderflow(ArithmeticError):
    """Adaptive step fell below the configured floor."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of_index(cls, k: int) -> "Parity":
        return cls.EVEN if k % 2 == 0 else cls.ODD

    @property
    def initial(self) -> tuple[float, float]:
        return (1.0, 0.0) if self is Parity.EVEN else (0.0, 1.0)

    @property
    def other(self) -> "Parity":
        return Parity.ODD if self is Parity.EVEN else Parity.EVEN


@dataclass(frozen=True)
class OdeState:
    """Solution data at z; the true values are ``(y, dy) * exp(log)``."""

    z: complex
    y: complex
    dy: complex
    log: float = 0.0

    def conj(self) -> "OdeState":
        return OdeState(self.z.conjugate(), self.y.conjugate(), self.dy.conjugate(), self.log)

    @property
    def values(self) -> tuple[complex, complex]:
        f = math.exp(self.log)
        return self.y * f, self.dy * f


def _coeffs(P, lam) -> np.ndarray:
    if isinstance(P, EvenPolynomial):
        return P.shifted(lam)
    c = np.asarray(P, dtype=complex).copy()
    c[0] -= lam
    return c


def _initial(init) -> tuple[complex, complex]:
    if isinstance(init, Parity):
        y0, dy0 = init.initial
        return complex(y0), complex(dy0)
    y0, dy0 = init
    return complex(y0), complex(dy0)


def central_series(P, lam: float, init, order: int) -> np.ndarray:
    """Taylor coefficients ``a_0..a_order`` at the origin.

    Uses ``(n+2)(n+1) a_{n+2} = sum_j q_j a_{n-j}`` with ``q = P - lam``.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    y0, dy0 = _initial(init)
    a = np.empty(order + 1, dtype=complex)
    K.fill_series(_coeffs(P, lam), complex(y0), complex(dy0), a)
    if all(abs(x.imag) == 0 for x in a):
        return a.real.copy()
    return a


def propagate(P, lam: float, state: OdeState, target: complex, tol: float = 1e-12,
              order: int = DEFAULT_ORDER, hmin: float = DEFAULT_HMIN) -> OdeState:
    """Continue ``state`` analytically along the straight segment to ``target``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = _coeffs(P, lam)
    Y, DY, lm, status, _, _ = K.march(
        c, complex(state.z), complex(target),
        np.array([complex(state.y)]), np.array([complex(state.dy)]),
        tol, order, hmin, True, False)
    if status:
        raise StepUnderflow(f"step below {hmin:g} between {state.z} and {target}")
    return OdeState(complex(target), complex(Y[0]), complex(DY[0]), state.log + float(lm))


def propagate_path(P, lam: float, state: OdeState, path, tol: float = 1e-12,
                   order: int = DEFAULT_ORDER) -> list[OdeState]:
    """Propagate along a polyline; returns the state at every vertex."""
    out = [state]
    for z in path:
        state = propagate(P, lam, state, z, tol, order)
        out.append(state)
    return out


def march_record(coeffs: np.ndarray, t_end: float, init, tol: float = DEFAULT_TOL,
                 order: int = DEFAULT_ORDER, hmin: float = DEFAULT_HMIN):
    """Real-axis run from 0 to t_end keeping every step node.

    Returns (ts, ys, final (y, dy)).
    """
    y0, dy0 = _initial(init)
    Y, DY, _, status, ts, ys = K.march(
        np.asarray(coeffs, dtype=complex), 0j, complex(t_end),
        np.array([complex(y0)]), np.array([complex(dy0)]), tol, order, hmin, False, True)
    if status:
        raise StepUnderflow(f"step below {hmin:g} on [0, {t_end}]")
    return ts, ys, (complex(Y[0]), complex(DY[0]))


@dataclass(frozen=True)
class RealRestriction:
    """Real ODE ``-u'' + Q(t) u = mu u`` satisfied by ``u(t) = y(i t)``.

    ``Q(t) = -P(i t)`` has coefficients ``(-1)**(j+1) c_j`` on ``t**(2j)`` and
    ``mu = -lam``; equivalently ``u'' + (P(it) - lam) u = 0``.
    """

    even_coeffs: tuple[float, ...]
    mu: float

    @property
    def coeffs(self) -> np.ndarray:
        out = np.zeros(2 * len(self.even_coeffs) - 1)
        out[::2] = self.even_coeffs
        return out

    def shifted(self) -> np.ndarray:
        c = self.coeffs.astype(complex)
        c[0] -= self.mu
        return c

    def q(self, t):
        w = np.asarray(t, dtype=float) ** 2
        acc = np.zeros_like(w) + self.even_coeffs[-1]
        for c in reversed(self.even_coeffs[:-1]):
            acc = acc * w + c
        return acc - self.mu


def imaginary_restriction(P: EvenPolynomial, lam: float) -> RealRestriction:
    coeffs = tuple(((-1) ** (j + 1)) * c for j, c in enumerate(P.even_coeffs))
    return RealRestriction(tuple(float(c) + 0.0 for c in coeffs), -float(lam))


def real_restriction(P: EvenPolynomial, lam: float) -> RealRestriction:
    return RealRestriction(P.even_coeffs, float(lam))


class EntireSolution:
    """One solution of the ODE, evaluable anywhere with controlled error.

    Outward transport from the origin is exact in exact arithmetic but
    amplifies rounding errors wherever the solution is recessive. Sectors in
    which the solution decays are detected once; deep inside them, values are
    obtained by matching to the decaying solution integrated inward from
    far out on the same ray.
    """

    def __init__(self, P: EvenPolynomial, lam: float, init, tol: float = DEFAULT_TOL,
                 order: int = DEFAULT_ORDER):
        self.P = P
        self.lam = float(lam)
        self.y0, self.dy0 = _initial(init)
        self.tol = tol
        self.order = order
        self.coeffs = P.shifted(lam)
        self.nsec = P.degree + 2
        self.recessive = np.zeros(self.nsec, dtype=np.bool_)
        self.match_radius = np.zeros(self.nsec)
        self.match_y = np.zeros(self.nsec, dtype=complex)
        self.match_dy = np.zeros(self.nsec, dtype=complex)
        self.match_log = np.zeros(self.nsec)
        for j in range(self.nsec):
            self._classify(j)

    def _classify(self, j: int) -> None:
        """Decide whether the solution decays in sector j.

        The test compares it with the decaying solution at the point of the
        bisector where the growth exponent reaches FORWARD_ACTION.
        """
        omega = complex(np.exp(2j * math.pi * j / self.nsec))
        c = self.coeffs
        rm = K.ray_radius(c, omega, FORWARD_ACTION, 0.5)
        rf = K.ray_radius(c, omega, FORWARD_ACTION + INWARD_MARGIN, rm)
        zm = omega * rm
        Y, DY, lm, st0, _, _ = K.march(c, 0j, zm, np.array([self.y0], dtype=complex),
                                       np.array([self.dy0], dtype=complex),
                                       self.tol, self.order, DEFAULT_HMIN, True, False)
        _, _, vm, dvm, _, st1 = K.recessive_run(c, zm, zm, zm, omega * rf, self.tol, self.order,
                                                DEFAULT_HMIN)
        if st0 or st1:
            raise StepUnderflow("sector classification failed")
        y, dy = Y[0], DY[0]
        w = y * dvm - dy * vm
        norm = abs(y) * abs(dvm) + abs(dy) * abs(vm)
        self.recessive[j] = bool(norm > 0 and abs(w) < 1e-4 * norm)
        self.match_radius[j] = rm
        self.match_y[j] = y
        self.match_dy[j] = dy
        self.match_log[j] = lm

    def values(self, zs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (y, dy, logscale); the true values are ``y * exp(logscale)``."""
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        y, dy, logs, stat = K.evaluate_points(
            self.coeffs, complex(self.y0), complex(self.dy0), zs, self.recessive,
            self.match_radius, self.match_y, self.match_dy, self.match_log, self.tol,
            self.order, DEFAULT_HMIN, FORWARD_ACTION, INWARD_MARGIN)
        if stat.any():
            raise StepUnderflow("step underflow while evaluating solution")
        return y, dy, logs

    def __call__(self, zs):
        y, dy, logs = self.values(zs)
        f = np.exp(logs)
        return y * f, dy * f

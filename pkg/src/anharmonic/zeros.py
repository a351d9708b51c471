"""Zero census of eigenfunctions: axis zeros by real root finding, the rest
by the argument principle."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import _kernels as K
from .ode import DEFAULT_HMIN, DEFAULT_ORDER, DEFAULT_TOL, EntireSolution, Parity, StepUnderflow
from .polynomial import EvenPolynomial
from .spectrum import _inward, shooting_radius, turning_point

START_NODES = 64
MAX_NODES = 2 ** 16
MAX_DARG = math.pi / 4
FLOOR = 1e-10
JITTER = 1e-3
RETRIES = 3


class BoundaryZero(ArithmeticError):
    """|y| on a contour dropped below the floor."""


class Axis(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class Box:
    x_max: float
    y_max: float

    def __post_init__(self):
        if not (self.x_max > 0 and self.y_max > 0):
            raise ValueError("box half-widths must be positive")

    @property
    def rect(self) -> tuple[float, float, float, float]:
        return (-self.x_max, self.x_max, -self.y_max, self.y_max)


@dataclass
class ZeroCensus:
    real_zeros: list[float]
    imaginary_zeros: list[float]
    offaxis_count: int
    box: Box
    lam: float
    k: int | None = None
    quadrant_counts: tuple[int, int, int, int] = (0, 0, 0, 0)
    quadrant_zeros: list[complex] = field(default_factory=list)
    total_count: int | None = None

    @property
    def consistent(self) -> bool:
        """Whole-box winding number equals the axis plus quadrant decomposition."""
        return self.total_count == len(self.real_zeros) + len(self.imaginary_zeros) + self.offaxis_count

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "lambda": self.lam,
            "box": {"x_max": self.box.x_max, "y_max": self.box.y_max},
            "real_zeros": list(self.real_zeros),
            "imaginary_zeros": list(self.imaginary_zeros),
            "offaxis_count": self.offaxis_count,
            "quadrant_counts": list(self.quadrant_counts),
            "quadrant_zeros": [[z.real, z.imag] for z in self.quadrant_zeros],
            "total_count": self.total_count,
            "consistent": self.consistent,
        }


@functools.lru_cache(maxsize=64)
def solution(P: EvenPolynomial, lam: float, parity: Parity) -> EntireSolution:
    return EntireSolution(P, lam, parity)


def _restriction(P: EvenPolynomial, lam: float, axis: Axis):
    """(coefficients of the real potential, energy) for the axis restriction."""
    if axis is Axis.REAL:
        return P.even_coeffs, lam
    return tuple(((-1) ** (j + 1)) * c + 0.0 for j, c in enumerate(P.even_coeffs)), -lam


def _scan_limit(coeffs, energy, init, limit: float) -> float:
    """Where to stop looking for zeros of the restricted solution.

    Past the last turning point a solution that decays has no zeros, and
    forward transport there only amplifies rounding errors.
    """
    if coeffs[-1] <= 0:
        return limit
    Pa = EvenPolynomial(coeffs)
    t = turning_point(Pa, energy)
    if t >= limit:
        return limit
    y, dy = _value(np.asarray(Pa.shifted(energy)), init, t) if t > 0 else init
    R = shooting_radius(Pa, energy)
    v, dv = _inward(Pa, energy, R, t)
    norm = abs(y * dv) + abs(dy * v)
    if norm > 0 and abs(y * dv - dy * v) < 1e-6 * norm:
        return t
    return limit


def _value(c: np.ndarray, init, t: float) -> tuple[float, float]:
    Y, DY, _, st, _, _ = K.march(c, 0j, complex(t), np.array([complex(init[0])]),
                                 np.array([complex(init[1])]), DEFAULT_TOL, DEFAULT_ORDER,
                                 DEFAULT_HMIN, False, False)
    if st:
        raise StepUnderflow(f"step underflow on [0, {t}]")
    return Y[0].real, DY[0].real


def axis_zeros(P: EvenPolynomial, lam: float, parity: Parity, limit: float,
               tol: float = 1e-10, axis: Axis | str = Axis.REAL) -> list[float]:
    """Sorted zeros of y on ``[-limit, limit]`` along one axis.

    For the imaginary axis the values ``t`` with ``y(i t) = 0`` are returned,
    and ``t = 0`` is left out (it is reported with the real zeros).
    """
    axis = Axis(axis)
    if limit <= 0 or tol <= 0:
        raise ValueError("limit and tol must be positive")
    coeffs, energy = _restriction(P, lam, axis)
    init = parity.initial
    c = np.array(coeffs, dtype=float)
    full = np.zeros(2 * len(c) - 1, dtype=complex)
    full[::2] = c
    full[0] -= energy
    end = _scan_limit(coeffs, energy, init, limit)
    pos: list[float] = []
    if end > 0:
        Y, DY, _, st, ts, ys = K.march(full, 0j, complex(end), np.array([complex(init[0])]),
                                       np.array([complex(init[1])]), DEFAULT_TOL,
                                       DEFAULT_ORDER, DEFAULT_HMIN, False, True)
        if st:
            raise StepUnderflow(f"step underflow on the {axis.value} axis")
        ys = ys.real
        f = lambda t: _value(full, init, t)[0]
        for i in range(1, len(ts) - 1 + 1):
            a, b = ts[i - 1], ts[i]
            ya, yb = ys[i - 1], ys[i]
            if a == 0.0:
                continue
            if ya == 0.0:
                pos.append(float(a))
            elif ya * yb < 0:
                pos.append(float(brentq(f, a, b, xtol=tol, rtol=1e-15)))
        if ys[-1] == 0.0 and ts[-1] > 0:
            pos.append(float(ts[-1]))
    zeros = sorted({*pos, *(-x for x in pos)})
    if axis is Axis.REAL and parity is Parity.ODD:
        zeros = sorted(zeros + [0.0])
    return zeros


def _side_values(sol: EntireSolution, a: complex, b: complex):
    """Adaptive boundary nodes on segment a->b with small argument steps.

    Returns the accumulated argument change.
    """
    s = np.linspace(0.0, 1.0, START_NODES + 1)
    y, dy, _ = sol.values(a + (b - a) * s)
    while True:
        darg = np.angle(y[1:] / y[:-1])
        # the log-derivative bounds the phase change and guards against aliasing
        ld = np.abs(dy / y)
        step = np.diff(s) * abs(b - a)
        bad = (np.abs(darg) >= MAX_DARG) | (step * np.maximum(ld[1:], ld[:-1]) >= MAX_DARG)
        if not bad.any():
            break
        if len(s) >= MAX_NODES:
            raise BoundaryZero(f"argument refinement exceeded {MAX_NODES} nodes on {a}->{b}")
        mids = 0.5 * (s[:-1][bad] + s[1:][bad])
        ym, dym, _ = sol.values(a + (b - a) * mids)
        s = np.concatenate([s, mids])
        order = np.argsort(s, kind="stable")
        s = s[order]
        y = np.concatenate([y, ym])[order]
        dy = np.concatenate([dy, dym])[order]
    # |y / y'| estimates the distance to the nearest zero
    if np.any(np.abs(y) < FLOOR * abs(b - a) * np.abs(dy)):
        raise BoundaryZero(f"|y| below floor on segment {a}->{b}")
    return float(np.sum(np.angle(y[1:] / y[:-1])))


def _winding(sol: EntireSolution, rect) -> int:
    x0, x1, y0, y1 = rect
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    total = sum(_side_values(sol, corners[i], corners[(i + 1) % 4]) for i in range(4))
    n = total / (2 * math.pi)
    if abs(n - round(n)) > 0.1:
        raise BoundaryZero(f"non-integer winding {n:.3f}")
    return int(round(n))


def count_zeros_rect(P: EvenPolynomial, lam: float, parity: Parity, rect, tol: float = 1e-6,
                     jitter: bool = False) -> int:
    """Number of zeros of y inside ``rect = (x0, x1, y0, y1)``, by winding number.

    With ``jitter`` the rectangle is grown by small relative amounts when its
    boundary passes too close to a zero.
    """
    x0, x1, y0, y1 = map(float, rect)
    if not (x1 > x0 and y1 > y0):
        raise ValueError("empty rectangle")
    sol = solution(P, float(lam), parity)
    attempts = RETRIES + 1 if jitter else 1
    span = max(x1 - x0, y1 - y0)
    for i in range(attempts):
        d = JITTER * span * i
        try:
            return _winding(sol, (x0 - d, x1 + d, y0 - 0.7 * d, y1 + 0.7 * d))
        except BoundaryZero:
            if i == attempts - 1:
                raise
    raise AssertionError("unreachable")


def _locate(sol: EntireSolution, rect, count: int, tol: float, out: list[complex]) -> None:
    """Refine the positions of ``count`` zeros inside rect by bisection and Newton."""
    x0, x1, y0, y1 = rect
    if count == 0:
        return
    if count == 1 and max(x1 - x0, y1 - y0) < 0.05:
        z = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        for _ in range(50):
            y, dy = sol(np.array([z]))
            step = y[0] / dy[0]
            z -= step
            if abs(step) < tol:
                break
        out.append(z)
        return
    if x1 - x0 >= y1 - y0:
        xm = 0.5 * (x0 + x1)
        parts = [(x0, xm, y0, y1), (xm, x1, y0, y1)]
    else:
        ym = 0.5 * (y0 + y1)
        parts = [(x0, x1, y0, ym), (x0, x1, ym, y1)]
    first = _winding_jittered(sol, parts[0])
    _locate(sol, parts[0], first, tol, out)
    _locate(sol, parts[1], count - first, tol, out)


def _winding_jittered(sol, rect) -> int:
    x0, x1, y0, y1 = rect
    span = max(x1 - x0, y1 - y0)
    for i in range(RETRIES + 1):
        d = JITTER * span * i
        try:
            return _winding(sol, (x0, x1 + d, y0, y1 + d))
        except BoundaryZero:
            if i == RETRIES:
                raise
    raise AssertionError("unreachable")


def census(P: EvenPolynomial, lam: float, parity: Parity, box: Box, tol: float = 1e-6,
           k: int | None = None, locate: bool = True) -> ZeroCensus:
    """Zeros of the parity solution at energy lam inside the box."""
    lam = float(lam)
    real = axis_zeros(P, lam, parity, box.x_max, min(tol, 1e-10), Axis.REAL)
    imag = axis_zeros(P, lam, parity, box.y_max, min(tol, 1e-10), Axis.IMAGINARY)
    real = [x for x in real if abs(x) < box.x_max]
    imag = [t for t in imag if abs(t) < box.y_max]
    inset = 10 * tol
    X, Yb = box.x_max, box.y_max
    quads = [(inset, X, inset, Yb), (-X, -inset, inset, Yb),
             (-X, -inset, -Yb, -inset), (inset, X, -Yb, -inset)]
    counts = tuple(count_zeros_rect(P, lam, parity, q, tol, jitter=True) for q in quads)
    total = count_zeros_rect(P, lam, parity, box.rect, tol, jitter=True)
    located: list[complex] = []
    if locate and counts[0] > 0:
        sol = solution(P, lam, parity)
        _locate(sol, quads[0], counts[0], tol, located)
        located = sorted(located, key=lambda z: (z.real, z.imag))
        located = [s * z for z in located for s in (1, -1)] + [z.conjugate() * s for z in located for s in (1, -1)]
    return ZeroCensus(real, imag, int(sum(counts)), box, lam, k, counts, located, total)


def verify_axis_confinement(c: ZeroCensus) -> bool:
    return c.offaxis_count == 0

"""Even real polynomial potentials and Stokes-sector geometry."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class EvenPolynomial:
    """Real even polynomial ``P(z) = sum_j c_j z**(2j)`` with ``c_last > 0``.

    Only the even coefficients are stored, so ``P(-z) = P(z)`` and
    ``P(conj z) = conj P(z)`` hold by construction.
    """

    even_coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.even_coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise ValueError("potential must have degree >= 2")
        if not coeffs[-1] > 0:
            raise ValueError("leading coefficient must be positive")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "even_coeffs", coeffs)

    @property
    def degree(self) -> int:
        return 2 * (len(self.even_coeffs) - 1)

    @property
    def leading(self) -> float:
        return self.even_coeffs[-1]

    @property
    def coeffs(self) -> np.ndarray:
        """Full ascending power coefficients (odd slots are zero)."""
        out = np.zeros(self.degree + 1)
        out[::2] = self.even_coeffs
        return out

    def __call__(self, z):
        return evaluate(self, z)

    def shifted(self, lam: float) -> np.ndarray:
        """Complex ascending coefficients of ``P(z) - lam``."""
        c = self.coeffs.astype(complex)
        c[0] -= lam
        return c

    def real_minimum(self) -> float:
        """Minimum of P over the real line."""
        crit = np.polynomial.polynomial.polyroots(
            np.polynomial.polynomial.polyder(self.coeffs))
        xs = [0.0] + [r.real for r in crit if abs(r.imag) < 1e-9]
        return float(min(evaluate(self, x).real for x in xs))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"even_coeffs": list(self.even_coeffs), "degree": self.degree}

    @classmethod
    def from_dict(cls, data: dict) -> "EvenPolynomial":
        poly = cls(tuple(data["even_coeffs"]))
        if "degree" in data and int(data["degree"]) != poly.degree:
            raise ValueError("degree field disagrees with coefficients")
        return poly

    @classmethod
    def from_json(cls, text: str) -> "EvenPolynomial":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        terms = []
        for j in range(len(self.even_coeffs) - 1, -1, -1):
            c = self.even_coeffs[j]
            if c == 0:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if j == 0:
                body = f"{mag:g}"
            else:
                body = ("" if mag == 1 else f"{mag:g}") + f"z^{2 * j}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            text += sign + body
        return text


def evaluate(P: EvenPolynomial, z):
    """Horner evaluation in ``w = z**2``; works on scalars and arrays."""
    w = np.asarray(z) ** 2
    acc = np.zeros_like(w) + P.even_coeffs[-1]
    for c in reversed(P.even_coeffs[:-1]):
        acc = acc * w + c
    if np.ndim(acc) == 0:
        return acc.item()
    return acc


def qes_potential(m: int, p: int, b: float) -> EvenPolynomial:
    """Sextic ``z^6 + 2b z^4 + (b^2 - 4m - 2p - 3) z^2`` of the QES family."""
    if p not in (0, 1):
        raise ValueError("p must be 0 or 1")
    if m < 0 or int(m) != m:
        raise ValueError("m must be a non-negative integer")
    b = float(b)
    return EvenPolynomial((0.0, b * b - 4 * m - 2 * p - 3, 2 * b, 1.0))


_TERM = re.compile(r"([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*\*?\s*(z(?:\s*\^\s*(\d+))?)?")


def parse_potential(text: str) -> EvenPolynomial:
    """Parse ``"z^6-7z^2"``-style shorthand or a comma list of even coefficients.

    >>> parse_potential("z^6-7z^2").even_coeffs
    (0.0, -7.0, 0.0, 1.0)
    >>> parse_potential("0,1,1").degree
    4
    """
    text = text.strip()
    if "z" not in text:
        return EvenPolynomial(tuple(float(t) for t in text.replace(";", ",").split(",")))
    coeffs: dict[int, float] = {}
    pos = 0
    compact = text.replace(" ", "")
    while pos < len(compact):
        m = _TERM.match(compact, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse potential near {compact[pos:]!r}")
        sign, num, zpart, power = m.groups()
        if not num and not zpart:
            raise ValueError(f"cannot parse potential near {compact[pos:]!r}")
        coef = float(num) if num else 1.0
        if sign == "-":
            coef = -coef
        n = 0 if not zpart else (int(power) if power else 1)
        if n % 2:
            raise ValueError(f"odd power z^{n} is not allowed in an even potential")
        coeffs[n] = coeffs.get(n, 0.0) + coef
        pos = m.end()
    top = max(coeffs)
    return EvenPolynomial(tuple(coeffs.get(2 * j, 0.0) for j in range(top // 2 + 1)))


@dataclass(frozen=True)
class StokesGeometry:
    """Stokes rays ``pi(2j-1)/(d+2)`` and sector bisectors ``2 pi j/(d+2)``.

    Angles are kept as exact fractions of pi, reduced to ``[0, 2)``.
    """

    d: int
    ray_turns: tuple[Fraction, ...]
    bisector_turns: tuple[Fraction, ...]

    @property
    def n_sectors(self) -> int:
        return self.d + 2

    @property
    def ray_angles(self) -> list[float]:
        return [float(f) * math.pi for f in self.ray_turns]

    @property
    def sector_bisectors(self) -> list[float]:
        return [float(f) * math.pi for f in self.bisector_turns]

    def ray_on_axis(self, j: int) -> bool:
        return (2 * self.ray_turns[j]).denominator == 1

    def sector_of(self, angle: float) -> int:
        """Index of the closed sector containing ``angle`` (radians)."""
        n = self.d + 2
        x = (angle * n / math.pi + 1.0) / 2.0
        return int(math.floor(x)) % n


def stokes(d: int) -> StokesGeometry:
    if d < 2 or d % 2:
        raise ValueError("degree must be an even integer >= 2")
    n = d + 2
    rays = tuple(Fraction(2 * j - 1, n) % 2 for j in range(n))
    bis = tuple(Fraction(2 * j, n) % 2 for j in range(n))
    return StokesGeometry(d, rays, bis)

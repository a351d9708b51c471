import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from anharmonic.polynomial import EvenPolynomial, evaluate, parse_potential, qes_potential, stokes

coeff = st.floats(-5, 5, allow_nan=False)
polys = st.builds(lambda cs, lead: EvenPolynomial(tuple(cs) + (lead,)),
                  st.lists(coeff, min_size=1, max_size=4), st.floats(0.1, 5))
points = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("text,coeffs", [
    ("z^2", (0.0, 1.0)),
    ("z^4 + z^2", (0.0, 1.0, 1.0)),
    ("z^6 - 3z^2 + 1", (1.0, -3.0, 0.0, 1.0)),
    ("2*z^2", (0.0, 2.0)),
    ("0.5z^4-1e-1z^2", (0.0, -0.1, 0.5)),
])
def test_parse(text, coeffs):
    assert parse_potential(text).even_coeffs == coeffs


@pytest.mark.parametrize("text", ["z^3", "z^4 + z", "-z^4", "3", "z^4 + y"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_potential(text)


def test_trailing_zeros_trimmed_and_degree():
    P = EvenPolynomial((1.0, 2.0, 0.0))
    assert P.degree == 2 and P.even_coeffs == (1.0, 2.0)
    with pytest.raises(ValueError):
        EvenPolynomial((1.0,))
    with pytest.raises(ValueError):
        EvenPolynomial((0.0, math.inf))


@given(polys)
def test_json_round_trip(P):
    assert EvenPolynomial.from_json(P.to_json()) == P


def test_degree_field_checked():
    with pytest.raises(ValueError):
        EvenPolynomial.from_dict({"even_coeffs": [0, 1], "degree": 4})


@given(polys, points)
def test_even_and_real(P, z):
    a, b, c = P(z), P(-z), P(z.conjugate())
    assert abs(a - b) <= 1e-12 * (1 + abs(a))
    assert abs(c - np.conj(a)) <= 1e-12 * (1 + abs(a))
    assert abs(a - np.polyval(P.coeffs[::-1], z)) <= 1e-9 * (1 + abs(a))


def test_evaluate_arrays():
    P = parse_potential("z^4 + z^2")
    x = np.array([0.0, 1.0, 2.0])
    assert np.allclose(evaluate(P, x), [0, 2, 20])


def test_shifted():
    P = parse_potential("z^4 + z^2")
    assert np.allclose(P.shifted(3.0), [-3, 0, 1, 0, 1])


def test_real_minimum():
    assert parse_potential("z^4 - 2z^2").real_minimum() == pytest.approx(-1.0)
    assert parse_potential("z^2 + 1").real_minimum() == pytest.approx(1.0)


def test_qes_potential():
    assert qes_potential(1, 0, 0).even_coeffs == (0.0, -7.0, 0.0, 1.0)
    assert qes_potential(0, 1, 2).even_coeffs == (0.0, -1.0, 4.0, 1.0)
    with pytest.raises(ValueError):
        qes_potential(1, 2, 0)
    with pytest.raises(ValueError):
        qes_potential(-1, 0, 0)


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10])
def test_stokes_geometry(d):
    g = stokes(d)
    n = d + 2
    assert g.n_sectors == n
    for j in range(n):
        assert g.sector_of(g.sector_bisectors[j]) == j
        assert g.sector_of(g.ray_angles[j] + 1e-9) == j
    # the real axis is a bisector and the conjugation maps rays to rays
    assert g.sector_bisectors[0] == 0.0
    turns = set(g.ray_turns)
    assert {(2 - t) % 2 for t in turns} == turns
    on_axis = sum(g.ray_on_axis(j) for j in range(n))
    assert on_axis == (2 if n % 4 == 2 else 0)


def test_stokes_rejects_odd():
    with pytest.raises(ValueError):
        stokes(3)

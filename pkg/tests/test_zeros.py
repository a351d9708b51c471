import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import hermite

import oracles
from anharmonic.ode import Parity
from anharmonic.polynomial import parse_potential
from anharmonic.spectrum import eigenpair
from anharmonic.zeros import Axis, Box, axis_zeros, census, count_zeros_rect

HARMONIC = parse_potential("z^2")


@pytest.mark.parametrize("k", range(6))
def test_harmonic_zeros_are_hermite_roots(k):
    c = census(HARMONIC, 2 * k + 1.0, Parity.of_index(k), Box(4, 4))
    expect = sorted(hermite.hermroots([0] * k + [1])) if k else []
    assert np.allclose(sorted(c.real_zeros), expect, atol=1e-9)
    assert c.offaxis_count == 0 and c.imaginary_zeros == []
    assert c.consistent


@pytest.mark.parametrize("lam", [2.0, 4.0, 6.3])
def test_offaxis_counts_match_kummer_oracle(lam):
    f = lambda z: oracles.harmonic_even(lam, z)
    rect = (0.05, 3.0, 0.05, 3.0)
    assert count_zeros_rect(HARMONIC, lam, Parity.EVEN, rect) == oracles.winding(f, rect, 800)


@pytest.mark.parametrize("lam", [2.0, 4.0])
def test_located_zeros_are_zeros(lam):
    c = census(HARMONIC, lam, Parity.EVEN, Box(3, 3))
    assert len(c.quadrant_zeros) == c.offaxis_count > 0
    for z in c.quadrant_zeros:
        near = abs(oracles.harmonic_even(lam, z + 1e-3))
        assert abs(oracles.harmonic_even(lam, z)) < 1e-5 * near


def test_quadrant_symmetry():
    c = census(HARMONIC, 2.0, Parity.EVEN, Box(3, 3))
    assert len(set(c.quadrant_counts)) == 1
    zs = set(np.round(c.quadrant_zeros, 8))
    assert all(np.round(-z, 8) in zs and np.round(np.conj(z), 8) in zs for z in zs)


@pytest.mark.parametrize("P,k", [("z^4", 3), ("z^4 + z^2", 4), ("z^6 - 3z^2", 0),
                                 ("z^6 - 5z^2", 1)])
def test_eigenfunctions_have_axis_zeros_only(P, k):
    P = parse_potential(P)
    e = eigenpair(P, k)
    c = census(P, e.lam, e.parity, Box(3, 3), k=k)
    assert c.offaxis_count == 0
    assert len(c.real_zeros) == k
    assert c.consistent


def test_generic_sextic_eigenfunction_leaves_the_axes():
    # only the quasi-exactly solvable levels keep every zero on the axes
    P = parse_potential("z^6 - 3z^2")
    e = eigenpair(P, 2)
    c = census(P, e.lam, e.parity, Box(3, 3), k=2, locate=False)
    assert c.offaxis_count > 0 and c.offaxis_count % 4 == 0
    assert c.consistent


def test_imaginary_axis_zeros_match_restriction():
    # y(it) for z^4 solves u'' = (lam - t^4) u; zeros from a dense sign scan
    from scipy.integrate import solve_ivp

    P = parse_potential("z^4")
    e = eigenpair(P, 2)
    found = axis_zeros(P, e.lam, e.parity, 3.0, 1e-10, Axis.IMAGINARY)
    sol = solve_ivp(lambda t, u: [u[1], (e.lam - t ** 4) * u[0]],
                    (0, 3), [1.0, 0.0], dense_output=True, rtol=1e-12, atol=1e-14)
    t = np.linspace(0, 3, 30001)
    u = sol.sol(t)[0]
    roots = t[1:][np.sign(u[1:]) != np.sign(u[:-1])]
    pos = sorted(x for x in found if x > 0)
    assert len(pos) == len(roots)
    assert np.allclose(pos, roots, atol=2e-4)


def test_box_validation():
    with pytest.raises(ValueError):
        Box(0, 1)
    assert Box(2, 3).rect == (-2, 2, -3, 3)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.3, 8.0))
def test_whole_box_equals_decomposition(lam):
    c = census(HARMONIC, lam, Parity.EVEN, Box(2.5, 2.5), locate=False)
    assert c.consistent
    assert c.offaxis_count % 4 == 0

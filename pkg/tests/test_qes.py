import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anharmonic.ode import OdeState, propagate
from anharmonic.qes import (
    ConstraintViolation, QesSpec, classify, cross_check, lift_zeros, qes_matrix, qes_solve,
    real_roots, tridiagonal_eigenvalues,
)

B = (-2.0, 0.0, 2.0)


@pytest.mark.parametrize("b", B)
def test_closed_forms_m0(b):
    assert abs(qes_solve(QesSpec(0, 0, b))[0].lam - b) < 1e-10
    assert abs(qes_solve(QesSpec(0, 1, b))[0].lam - 3 * b) < 1e-10


def test_closed_form_m1_b0():
    lams = [s.lam for s in qes_solve(QesSpec(1, 0, 0.0))]
    assert np.allclose(lams, [-2 * math.sqrt(2), 2 * math.sqrt(2)], atol=1e-10, rtol=0)
    lams = [s.lam for s in qes_solve(QesSpec(1, 1, 0.0))]
    assert np.allclose(lams, [-2 * math.sqrt(6), 2 * math.sqrt(6)], atol=1e-10, rtol=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(-4, 4))
def test_m1_quadratic(b):
    # det of the 2x2 action: lam^2 - 6 b lam + 5 b^2 - 8
    lams = [s.lam for s in qes_solve(QesSpec(1, 0, b))]
    r = math.sqrt(4 * b * b + 8)
    assert np.allclose(lams, [3 * b - r, 3 * b + r], atol=1e-10, rtol=0)


@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("p", [0, 1])
@pytest.mark.parametrize("b", B)
def test_spectrum_real_simple_and_roots_signed(m, p, b):
    spec = QesSpec(m, p, b)
    sols = qes_solve(spec)
    ref = np.sort(np.linalg.eigvals(qes_matrix(spec)))
    assert np.max(np.abs(ref.imag)) < 1e-8 * max(1.0, np.max(np.abs(ref)))
    assert np.allclose([s.lam for s in sols], ref.real, atol=1e-8 * max(1.0, np.max(np.abs(ref))))
    assert all(b2.lam - a.lam > 1e-8 for a, b2 in zip(sols, sols[1:]))
    for k, s in enumerate(sols):
        assert len(s.u_roots) == m
        assert sum(u > 0 for u in s.u_roots) == k
        assert sum(u < 0 for u in s.u_roots) == m - k
        assert s.residual < 1e-8
        assert s.index == 2 * k + p


def test_closed_form_matches_continuation():
    spec = QesSpec(2, 1, -1.0)
    sol = qes_solve(spec)[1]
    # y = z Qt(z^2) exp(...) has y'(0) = c_0
    state = OdeState(0j, 0.0, sol.q_coeffs[0])
    for z in (1.2 + 0.4j, -0.5 + 1.5j, 2.0):
        got = propagate(spec.potential, sol.lam, state, z).values[0]
        assert abs(got - complex(sol.y(z))) <= 1e-10 * max(1.0, abs(got))


def test_lift_and_classify():
    sol = qes_solve(QesSpec(3, 1, 0.0))[2]
    real, imag = lift_zeros(sol)
    assert len(real) == 2 * 2 + 1 and 0.0 in real
    assert len(imag) == 2
    for x in real:
        assert abs(complex(sol.y(x))) < 1e-9
    for t in imag:
        assert abs(complex(sol.y(1j * t))) < 1e-9 * max(1.0, abs(complex(sol.y(1j * t * 1.01))))
    assert classify(sol) == (7, 5)


def test_classify_rejects_impossible_parameters():
    # more real zeros than zeros in total
    sol = qes_solve(QesSpec(2, 0, 0.0))[2]
    bogus = replace(sol, spec=QesSpec(0, 0, 0.0))
    with pytest.raises(ConstraintViolation):
        classify(bogus)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6, unique=True))
def test_real_roots_recover_known_roots(roots):
    roots = sorted(roots)
    if min(np.diff(roots), default=1.0) < 1e-2:
        return
    c = np.polynomial.polynomial.polyfromroots(roots)
    assert np.allclose(real_roots(c), roots, atol=1e-7)


def test_real_roots_refuse_complex_pair():
    with pytest.raises(ArithmeticError):
        real_roots([1.0, 0.0, 1.0])


def test_tridiagonal_eigenvalues():
    diag = np.array([1.0, -2.0, 3.0, 0.5])
    upper = np.array([2.0, -1.0, 0.5])
    lower = np.array([0.5, -3.0, 2.0])
    ref = np.sort(np.linalg.eigvals(np.diag(diag) + np.diag(upper, 1) + np.diag(lower, -1)).real)
    assert np.allclose(tridiagonal_eigenvalues(diag, upper, lower), ref, atol=1e-12)
    with pytest.raises(ValueError):
        tridiagonal_eigenvalues(diag, upper, -lower)


@pytest.mark.parametrize("m,p,b,k", [(1, 0, 0.0, 0), (2, 1, 2.0, 2), (3, 0, -2.0, 1)])
def test_cross_check_against_shooting(m, p, b, k):
    rep = cross_check(QesSpec(m, p, b), k)
    assert rep.ok
    assert abs(rep.lam_qes - rep.lam_shooting) < 1e-6


def test_spec_validation():
    with pytest.raises(ValueError):
        QesSpec(1, 2, 0.0)
    with pytest.raises(ValueError):
        QesSpec(-1, 0, 0.0)
    with pytest.raises(ValueError):
        cross_check(QesSpec(1, 0, 0.0), 2)

import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from hydrowallis.oracles import (EigensolverSpec, QuadratureConvergenceError, QuadratureSpec,
                                 ResolutionError, golden_section, integrate, numeric_minimize,
                                 quadrature_expectation, quadrature_moment,
                                 quadrature_uncertainty, radial_eigensolve, radial_eigenvalue)
from hydrowallis.oracles.quadrature import (GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES,
                                            gauss_kronrod)
from hydrowallis.variational import (QuantumNumbers, TrialState, analytic_minimum,
                                     exact_energy, expectation_energy, uncertainty_ratio)


# -- quadrature rule ---------------------------------------------------------

def test_kronrod_rule_structure():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2, abs=1e-15)
    x, w = np.polynomial.legendre.leggauss(7)
    gauss_nodes = NODES[GAUSS_WEIGHTS != 0]
    assert np.allclose(np.sort(gauss_nodes), x, atol=1e-15)
    assert np.allclose(GAUSS_WEIGHTS[GAUSS_WEIGHTS != 0], w[np.argsort(x)], atol=1e-15)


@pytest.mark.parametrize("deg", range(0, 23))
def test_kronrod_exact_degree(deg):
    exact = 0.0 if deg % 2 else 2 / (deg + 1)
    k, err = gauss_kronrod(lambda x: x**deg, -1.0, 1.0)
    assert k == pytest.approx(exact, abs=1e-14)
    if deg <= 13:
        assert err < 1e-14


def test_integrate_gaussian_and_vector():
    val, err = integrate(lambda r: np.exp(-r * r), 0.0, 12.0)
    assert val == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert err < 1e-12
    (a, b), _ = integrate(lambda r: np.stack([r, r * r]), 0.0, 3.0)
    assert (a, b) == (pytest.approx(4.5), pytest.approx(9.0))


def test_integrate_reports_nonconvergence():
    # a kink that bisection cannot resolve in two levels
    with pytest.raises(QuadratureConvergenceError) as info:
        integrate(lambda r: np.abs(r - 1 / 3), 0.0, 1.0, rel_tol=1e-14, max_depth=2)
    assert info.value.estimate == pytest.approx(5 / 18, rel=1e-3)
    assert info.value.error > 0


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.1)
    with pytest.raises(ValueError):
        QuadratureSpec(r_cut=-1)


# -- quadrature of the trial state -------------------------------------------

def test_quadrature_examples():
    e = quadrature_expectation(TrialState(8 / (9 * math.pi), 0, 3))
    assert e == pytest.approx(-8 / (3 * math.pi), abs=1e-11)
    e = quadrature_expectation(TrialState(0.5, 0, 3))
    assert e == pytest.approx(1.5 - 4 / math.sqrt(math.pi), abs=1e-11)
    s = TrialState(0.3, 2, 5)
    assert quadrature_expectation(s) == pytest.approx(expectation_energy(s), rel=1e-10)


@pytest.mark.parametrize("beta, ell, dim", [(0.3, 2, 5), (1.7, 0, 2), (0.05, 7, 4), (4.0, 1, 3)])
def test_kinetic_forms_agree(beta, ell, dim):
    s = TrialState(beta, ell, dim)
    parts = quadrature_expectation(s, kinetic="parts")
    direct = quadrature_expectation(s, kinetic="direct")
    assert parts == pytest.approx(direct, rel=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.03, 10.0), st.integers(0, 20), st.integers(2, 8))
def test_quadrature_matches_formula(beta, ell, dim):
    s = TrialState(beta, ell, dim)
    assert quadrature_expectation(s) == pytest.approx(expectation_energy(s), rel=1e-10)


def test_moment_examples():
    s = TrialState(0.5, 0, 3)
    assert quadrature_moment(s, 2) == pytest.approx(1.5, rel=1e-12)
    assert quadrature_moment(s, 4) == pytest.approx(3.75, rel=1e-12)
    with pytest.raises(ValueError):
        quadrature_moment(s, 3)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 5.0), st.integers(0, 20), st.integers(2, 8))
def test_moments_closed_form_and_uncertainty(beta, ell, dim):
    s = TrialState(beta, ell, dim)
    a = ell + dim / 2
    assert quadrature_moment(s, 2) == pytest.approx(a / (2 * beta), rel=1e-11)
    assert quadrature_moment(s, 4) == pytest.approx(a * (a + 1) / (2 * beta) ** 2, rel=1e-11)
    assert quadrature_uncertainty(s) == pytest.approx(uncertainty_ratio(ell, dim), abs=1e-9)


# -- numerical minimization ---------------------------------------------------

def test_golden_section_float():
    x = golden_section(lambda t: (t - 0.7) ** 2, 0.0, 2.0, 1e-9)
    assert x == pytest.approx(0.7, abs=1e-9)


def test_numeric_minimize_examples():
    b, e = numeric_minimize(0, 3, tol=1e-8)
    assert b == pytest.approx(8 / (9 * math.pi), rel=1e-8)
    assert b == pytest.approx(0.282942, abs=1e-6)
    _, e = numeric_minimize(1, 3, tol=1e-8)
    assert e == pytest.approx(float(analytic_minimum(1, 3).energy), rel=1e-8)
    _, e = numeric_minimize(0, 2, tol=1e-8)
    assert e == pytest.approx(-math.pi, rel=1e-8)


@pytest.mark.parametrize("ell, dim", [(5, 2), (20, 8), (13, 5)])
def test_numeric_minimize_agrees_with_closed_form(ell, dim):
    m = analytic_minimum(ell, dim)
    b, e = numeric_minimize(ell, dim, tol=1e-9)
    assert b == pytest.approx(float(m.beta_star), rel=1e-9)
    assert e == pytest.approx(float(m.energy), rel=1e-9)


def test_numeric_minimize_validation():
    with pytest.raises(ValueError):
        numeric_minimize(0, 3, tol=1e-20)
    with pytest.raises(ValueError):
        numeric_minimize(-1, 3)


# -- eigensolver ----------------------------------------------------------------

def test_radial_reduction_symbolic():
    # R = u r^(-(N-1)/2) turns the N-dim radial operator into -u'' + Lam(Lam+1)/r^2 u
    r, n, ell = sp.symbols("r N ell", positive=True)
    u = sp.Function("u")(r)
    R = u * r ** (-(n - 1) / 2)
    radial = -(sp.diff(r ** (n - 1) * sp.diff(R, r), r)) / r ** (n - 1) + ell * (ell + n - 2) / r**2 * R
    lam = ell + (n - 3) / 2
    reduced = (-sp.diff(u, r, 2) + lam * (lam + 1) / r**2 * u) * r ** (-(n - 1) / 2)
    assert sp.simplify(sp.expand(radial - reduced)) == 0


@pytest.mark.parametrize("q, expected, tol", [
    (QuantumNumbers(0, 0, 3), -1.0, 1e-6),
    (QuantumNumbers(0, 1, 3), -0.25, 1e-6),
    (QuantumNumbers(0, 0, 2), -4.0, 1e-5),
])
def test_eigensolve_examples(q, expected, tol):
    res = radial_eigensolve(q)
    assert abs(res.energy - expected) < tol
    assert res.error_estimate < tol


def test_plain_stencil_second_order():
    q = QuantumNumbers(0, 0, 3)
    errs = [radial_eigenvalue(q, M, 40.0) + 1 for M in (2000, 4000, 8000)]
    assert errs[0] / errs[1] == pytest.approx(4, rel=0.02)
    assert errs[1] / errs[2] == pytest.approx(4, rel=0.02)


def test_flux_stencil_second_order_in_two_dimensions():
    q = QuantumNumbers(0, 0, 2)
    errs = [radial_eigenvalue(q, M, 10.0, "flux") + 4 for M in (2000, 4000, 8000)]
    assert errs[0] / errs[1] == pytest.approx(4, rel=0.05)
    assert errs[1] / errs[2] == pytest.approx(4, rel=0.05)


def test_stencils_agree_in_three_dimensions():
    q = QuantumNumbers(1, 2, 3)
    plain = radial_eigensolve(q, EigensolverSpec(stencil="plain")).energy
    flux = radial_eigensolve(q, EigensolverSpec(stencil="flux")).energy
    assert plain == pytest.approx(flux, abs=1e-7)


def test_resolution_error_on_tight_tolerance():
    with pytest.raises(ResolutionError, match="double grid_points"):
        radial_eigensolve(QuantumNumbers(0, 0, 3), EigensolverSpec(grid_points=1000, tol=1e-12))


def test_eigensolver_spec_validation():
    with pytest.raises(ValueError):
        EigensolverSpec(grid_points=10)
    with pytest.raises(ValueError):
        EigensolverSpec(stencil="spectral")


@pytest.mark.parametrize("dim", [2, 4, 6])
def test_eigenvalue_below_variational_minimum(dim):
    for ell in (0, 3, 5):
        q = QuantumNumbers(0, ell, dim)
        res = radial_eigensolve(q)
        assert res.energy < float(analytic_minimum(ell, dim).energy)
        assert res.energy == pytest.approx(float(exact_energy(q)), abs=1e-5)

"""Acceptance gate: one test per criterion, at the stated tolerances.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion (see ``conftest.py``).
"""
import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from hydrowallis.exactnum import HALF_PI, PiTaggedRational
from hydrowallis.oracles import (numeric_minimize, quadrature_expectation,
                                 quadrature_uncertainty, radial_eigensolve)
from hydrowallis.variational import (QuantumNumbers, TrialState, accuracy_ratio,
                                     analytic_minimum, exact_energy, expectation_energy,
                                     uncertainty_ratio)
from hydrowallis.wallis import (accuracy_ratio_float, bridge_even, convergence_order,
                                pi_estimate, wallis_partial)

SEED = 1729


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def gamma_table(twice_max):
    """Gamma on the half-integer lattice by z Gamma(z) = Gamma(z+1), nothing else."""
    table = {1: PiTaggedRational(Fraction(1), 1), 2: PiTaggedRational(Fraction(1), 0)}
    for t in range(3, twice_max + 1):
        table[t] = table[t - 2] * Fraction(t - 2, 2)
    return table


def ratio_from_table(table, ell, dim):
    # c^2 G^2 / a with c = l + (N-1)/2, a = c + 1/2, G = Gamma(c)/Gamma(a)
    tc = 2 * ell + dim - 1
    g = table[tc] / table[tc + 1]
    return g * g * Fraction(tc, 2) ** 2 / Fraction(tc + 1, 2)


def test_criterion_01_exact_odd_bridge():
    """1. P(l+1) == (pi/2) accuracy_ratio(l, 3) exactly, l in [0, 1000], < 30 s"""
    with Timer() as t:
        brute = Fraction(1)
        for ell in range(0, 1001):
            j = ell + 1
            brute *= Fraction(4 * j * j, 4 * j * j - 1)
            assert wallis_partial(ell + 1) == brute
            assert wallis_partial(ell + 1) == HALF_PI * accuracy_ratio(ell, 3), ell
    assert t.elapsed < 30


def test_criterion_02_odd_dimension_reduction():
    """2. accuracy_ratio(l, 2k+1) == accuracy_ratio(l+k-1, 3), l <= 200, k <= 20"""
    table = gamma_table(2 * 220 + 2)
    for ell in range(0, 201):
        for k in range(1, 21):
            lhs = accuracy_ratio(ell, 2 * k + 1)
            assert lhs == accuracy_ratio(ell + k - 1, 3), (ell, k)
            assert lhs == ratio_from_table(table, ell, 2 * k + 1)


def test_criterion_03_even_dimension_bridge():
    """3. even bridge ratio(l, 2k) = (pi/2) Q(m) 2m/(2m+1), brute-force validated"""
    table = gamma_table(2 * 220 + 2)
    Q = [Fraction(1)]
    for j in range(1, 221):
        Q.append(Q[-1] * Fraction(4 * j * j - 1, 4 * j * j))
    for ell in range(0, 201):
        for k in range(1, 21):
            m = ell + k
            ratio_brute = ratio_from_table(table, ell, 2 * k)
            closed_brute = HALF_PI * Q[m] * Fraction(2 * m, 2 * m + 1)
            assert ratio_brute == closed_brute, (ell, k)
            lhs, rhs = bridge_even(ell, k)
            assert lhs == ratio_brute and rhs == closed_brute, (ell, k)


def test_criterion_04_limit_behaviour():
    """4. 1 - ratio(l, 3) < 1/(2l) on [10, 1e4]; ratio(1e4, 3) > 0.99997; < 60 s"""
    with Timer() as t, mpmath.workprec(256):
        for ell in range(10, 10**4 + 1):
            assert 1 - accuracy_ratio_float(ell, 3, 256) < mpmath.mpf(1) / (2 * ell), ell
        top = accuracy_ratio_float(10**4, 3, 256)
        assert top > mpmath.mpf("0.99997")
        # deficit ~ 1/(4(l+1)) for odd N
        assert abs((1 - top) * 4 * (10**4 + 1) - 1) < 1e-3
    assert t.elapsed < 60


def test_criterion_05_pi_estimate():
    """5. |pi - 2 P(1e5)| within 2% of pi/(4e5), < 5 s"""
    L = 10**5
    with Timer() as t:
        est = pi_estimate(L, 256)
    with mpmath.workprec(256):
        deficit = mpmath.pi - est
        target = mpmath.pi / (4 * L)
        assert abs(deficit / target - 1) < 0.02
        # independent oracle: 2 P(L) = pi Gamma(L+1)^2 / (Gamma(L+1/2) Gamma(L+3/2))
        oracle = mpmath.pi * mpmath.exp(2 * mpmath.loggamma(L + 1) - mpmath.loggamma(L + 0.5)
                                        - mpmath.loggamma(L + 1.5))
        assert abs(est - oracle) < mpmath.mpf(10) ** -60
    assert float(deficit) == pytest.approx(7.854e-6, rel=1e-3)
    assert t.elapsed < 5


def test_criterion_06_convergence_order():
    """6. slope of log(1 - 2P/pi) vs log L on {1e3..1e6} is -1.00 +- 0.02"""
    slope, coeff = convergence_order([10**3, 10**4, 10**5, 10**6])
    assert abs(slope + 1) <= 0.02
    # independent fit from the closed form
    Ls = [10**3, 10**4, 10**5, 10**6]
    with mpmath.workprec(200):
        ys = [float(mpmath.log(1 - mpmath.exp(2 * mpmath.loggamma(L + 1) - mpmath.loggamma(L + 0.5)
                                              - mpmath.loggamma(L + 1.5))))
              for L in Ls]
    ref_slope, _ = np.polyfit(np.log(Ls), ys, 1)
    assert slope == pytest.approx(ref_slope, abs=1e-9)


def test_criterion_07_oracle_agreement():
    """7. quadrature vs <H> to 1e-10 rel on 100 cases; numeric_minimize to 1e-8"""
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(100):
        s = TrialState(float(10 ** rng.uniform(-1.5, 1.0)), int(rng.integers(0, 21)),
                       int(rng.integers(2, 9)))
        ref = expectation_energy(s)
        worst = max(worst, abs(quadrature_expectation(s) - ref) / abs(ref))
    assert worst < 1e-10
    for dim in range(2, 9):
        for ell in range(0, 21):
            m = analytic_minimum(ell, dim)
            b_star, e_min = float(m.beta_star), float(m.energy)
            b_hat, e_hat = numeric_minimize(ell, dim, tol=1e-8)
            assert abs(b_hat - b_star) <= 1e-8 * b_star, (ell, dim)
            assert abs(e_hat - e_min) <= 1e-8 * abs(e_min), (ell, dim)


def test_criterion_08_eigensolver_spectrum():
    """8. eigensolver reproduces -1/(n_r+l+(N-1)/2)^2 to 1e-6 (1e-5 for N=2, l=0), < 2 min"""
    with Timer() as t:
        for dim in (2, 3, 4, 5):
            for ell in range(4):
                for n_r in range(2):
                    q = QuantumNumbers(n_r, ell, dim)
                    exact = -1 / (n_r + ell + (dim - 1) / 2) ** 2
                    assert float(exact_energy(q)) == exact
                    tol = 1e-5 if (dim == 2 and ell == 0) else 1e-6
                    assert abs(radial_eigensolve(q).energy - exact) < tol, (n_r, ell, dim)
    assert t.elapsed < 120


def test_criterion_09_variational_principle():
    """9. <H>(beta) > exact ground energy for 1e3 sampled beta per (l <= 10, N <= 6)"""
    rng = np.random.default_rng(SEED)
    violations = 0
    for dim in range(2, 7):
        for ell in range(0, 11):
            e0 = float(exact_energy(QuantumNumbers(0, ell, dim)))
            for beta in 10 ** rng.uniform(-4, 3, size=1000):
                violations += not expectation_energy(TrialState(float(beta), ell, dim)) > e0
    assert violations == 0


def test_criterion_10_uncertainty_ratio():
    """10. quadrature moments give (l+N/2)^(-1/2) to 1e-9, beta-invariant; 0.816497 at (0, 3)"""
    for dim in range(2, 9):
        for ell in range(0, 21):
            ref = 1 / math.sqrt(ell + dim / 2)
            assert uncertainty_ratio(ell, dim) == pytest.approx(ref, abs=1e-15)
            for beta in (0.05, 0.5, 7.0):
                u = quadrature_uncertainty(TrialState(beta, ell, dim))
                assert abs(u - ref) < 1e-9, (ell, dim, beta)
    assert abs(uncertainty_ratio(0, 3) - 0.816497) < 1e-6


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

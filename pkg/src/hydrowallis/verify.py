"""Self-verification suite behind ``hydrowallis verify``.

Each check returns a :class:`Check`; ``fast`` runs the exact identities on
small ranges plus one quadrature and one eigensolver spot check, ``full``
runs the complete invariant grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import exactnum, variational, wallis
from .oracles import (EigensolverSpec, numeric_minimize, quadrature_expectation,
                      quadrature_uncertainty, radial_eigensolve)

__all__ = ["Check", "VerifyReport", "run_verify", "FAST_CHECKS", "FULL_CHECKS"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: str
    tolerance: str


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)


def _count(name, failures, total):
    return Check(name, failures == 0, f"{failures}/{total} mismatches", "0 (exact)")


def _max_err(name, err, tol):
    return Check(name, bool(err < tol), f"{err:.3e}", f"{tol:.0e}")


# -- exact identities --------------------------------------------------------

def check_gamma_recurrence(n_max):
    bad = 0
    for n in range(1, n_max + 1):
        lhs = exactnum.gamma_exact(exactnum.HalfInteger(2 * n + 1))
        rhs = exactnum.gamma_exact(exactnum.HalfInteger(2 * n - 1)) * Fraction(2 * n - 1, 2)
        bad += lhs != rhs
    return _count("gamma_half_integer_recurrence", bad, n_max)


def check_bridge_odd(ell_max):
    bad = sum(lhs != rhs for lhs, rhs in map(wallis.bridge_odd, range(ell_max + 1)))
    return _count("bridge_odd_wallis", bad, ell_max + 1)


def check_dimension_shift(ell_max, k_max):
    pairs = [(l, k) for l in range(ell_max + 1) for k in range(1, k_max + 1)]
    bad = sum(a != b for a, b in (variational.dimension_shift_identity(l, k) for l, k in pairs))
    return _count("dimension_shift_odd", bad, len(pairs))


def check_bridge_even(ell_max, k_max):
    pairs = [(l, k) for l in range(ell_max + 1) for k in range(1, k_max + 1)]
    bad = sum(a != b for a, b in (wallis.bridge_even(l, k) for l, k in pairs))
    return _count("bridge_even_reciprocal", bad, len(pairs))


def check_duality(L_max):
    bad = 0
    for L in range(1, L_max + 1):
        bad += wallis.wallis_partial(L) * wallis.wallis_reciprocal_partial(L) != 1
    return _count("wallis_duality", bad, L_max)


def check_ratio_consistency(ell_max, dim_max):
    bad = total = 0
    for dim in range(2, dim_max + 1):
        for ell in range(ell_max + 1):
            e_min = variational.analytic_minimum(ell, dim).energy
            e_ex = variational.exact_energy(variational.QuantumNumbers(0, ell, dim))
            bad += variational.accuracy_ratio(ell, dim) != e_min / e_ex
            total += 1
    return _count("ratio_equals_energy_quotient", bad, total)


def check_ratio_bounds(ell_max, dim_max):
    """0 < r(l) < 1 and r(l+1) > r(l), decided exactly."""
    bad = total = 0
    for dim in range(2, dim_max + 1):
        prev = None
        for ell in range(ell_max + 1):
            r = variational.accuracy_ratio(ell, dim)
            ok = exactnum.PiTaggedRational(0) < r < exactnum.ONE
            if prev is not None:
                # same pi power, so the quotient is rational
                ok = ok and (r / prev).coeff > 1
            bad += not ok
            total += 1
            prev = r
    return _count("ratio_in_unit_interval_monotone", bad, total)


def check_bracketing(L_max):
    """P increasing, Q decreasing, P < pi/2 < 1/Q, exact."""
    bad = 0
    p_prev = q_prev = None
    for L in range(1, L_max + 1):
        p = wallis.wallis_partial(L)
        q = wallis.wallis_reciprocal_partial(L)
        ok = p < exactnum.HALF_PI and q > 1 / exactnum.HALF_PI
        if p_prev is not None:
            ok = ok and p > p_prev and q < q_prev
        bad += not ok
        p_prev, q_prev = p, q
    return _count("wallis_monotone_bracketing", bad, L_max)


# -- floating point / oracle checks -----------------------------------------

def check_limit(ell_max):
    worst = 0.0
    for ell in range(10, ell_max + 1):
        deficit = 1 - wallis.accuracy_ratio_float(ell, 3, 256)
        worst = max(worst, float(deficit * 2 * ell))
    # measured: max of (1 - r) * 2l, must stay below 1
    return _max_err("ratio_limit_deficit", worst, 1.0)


def check_pi_estimate(L=10**5):
    with mpmath.workprec(256):
        err = mpmath.pi - wallis.pi_estimate(L, 256)
        rel = float(abs(err / (mpmath.pi / (4 * L)) - 1))
    return _max_err("pi_estimate_deficit", rel, 0.02)


def check_convergence(grid):
    slope, _ = wallis.convergence_order(grid)
    return _max_err("convergence_slope", abs(slope + 1), 0.02)


def _random_states(n, seed=20240917):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        ell = int(rng.integers(0, 21))
        dim = int(rng.integers(2, 9))
        beta = float(10 ** rng.uniform(-1.5, 1.0))
        yield variational.TrialState(beta, ell, dim)


def check_quadrature(states, name="quadrature_vs_analytic"):
    worst = 0.0
    for s in states:
        ref = variational.expectation_energy(s)
        worst = max(worst, abs(quadrature_expectation(s) - ref) / abs(ref))
    return _max_err(name, worst, 1e-10)


def check_minimize(ell_max, dim_max, tol=1e-8):
    worst = 0.0
    for dim in range(2, dim_max + 1):
        for ell in range(ell_max + 1):
            m = variational.analytic_minimum(ell, dim)
            b_star, e_min = float(m.beta_star), float(m.energy)
            b_hat, e_hat = numeric_minimize(ell, dim, tol=tol)
            worst = max(worst, abs(b_hat - b_star) / b_star, abs(e_hat - e_min) / abs(e_min))
    return _max_err("numeric_minimize", worst, tol)


def check_eigensolver(cases, name="eigensolver_vs_exact"):
    """Measured value is the worst error / tolerance; passes below 1."""
    worst = 0.0
    for q in cases:
        tol = 1e-5 if (q.dim == 2 and q.ell == 0) else 1e-6
        res = radial_eigensolve(q, EigensolverSpec())
        err = abs(res.energy - float(variational.exact_energy(q)))
        worst = max(worst, err / tol)
    return _max_err(name, worst, 1.0)


def check_variational_principle(ell_max, dim_max, n_beta=1000):
    bad = total = 0
    betas = np.logspace(-4, 3, n_beta)
    for dim in range(2, dim_max + 1):
        for ell in range(ell_max + 1):
            e_ex = float(variational.exact_energy(variational.QuantumNumbers(0, ell, dim)))
            for b in betas:
                bad += not variational.expectation_energy(variational.TrialState(float(b), ell, dim)) > e_ex
                total += 1
    return _count("variational_upper_bound", bad, total)


def check_uncertainty(ell_max, dim_max):
    worst = 0.0
    for dim in range(2, dim_max + 1):
        for ell in range(ell_max + 1):
            ref = variational.uncertainty_ratio(ell, dim)
            for beta in (0.37, 2.9):
                u = quadrature_uncertainty(variational.TrialState(beta, ell, dim))
                worst = max(worst, abs(u - ref))
    return _max_err("uncertainty_ratio_moments", worst, 1e-9)


def check_eigen_bound(ell_max, dim_max):
    bad = total = 0
    for dim in range(2, dim_max + 1):
        for ell in range(ell_max + 1):
            q = variational.QuantumNumbers(0, ell, dim)
            res = radial_eigensolve(q)
            bad += not res.energy <= float(variational.analytic_minimum(ell, dim).energy) + res.error_estimate
            total += 1
    return _count("eigensolver_below_variational", bad, total)


def _eigen_grid():
    return [variational.QuantumNumbers(n_r, ell, dim)
            for dim in (2, 3, 4, 5) for ell in range(4) for n_r in range(2)]


FAST_CHECKS = [
    ("gamma_half_integer_recurrence", lambda: check_gamma_recurrence(50)),
    ("bridge_odd_wallis", lambda: check_bridge_odd(50)),
    ("dimension_shift_odd", lambda: check_dimension_shift(20, 5)),
    ("bridge_even_reciprocal", lambda: check_bridge_even(20, 5)),
    ("wallis_duality", lambda: check_duality(100)),
    ("ratio_equals_energy_quotient", lambda: check_ratio_consistency(10, 8)),
    ("quadrature_spot", lambda: check_quadrature([variational.TrialState(0.3, 2, 5)], "quadrature_spot")),
    ("eigensolver_spot", lambda: check_eigensolver([variational.QuantumNumbers(0, 0, 3)], "eigensolver_spot")),
]

FULL_CHECKS = [
    ("gamma_half_integer_recurrence", lambda: check_gamma_recurrence(500)),
    ("bridge_odd_wallis", lambda: check_bridge_odd(1000)),
    ("dimension_shift_odd", lambda: check_dimension_shift(200, 20)),
    ("bridge_even_reciprocal", lambda: check_bridge_even(200, 20)),
    ("wallis_duality", lambda: check_duality(2000)),
    ("wallis_monotone_bracketing", lambda: check_bracketing(2000)),
    ("ratio_equals_energy_quotient", lambda: check_ratio_consistency(50, 12)),
    ("ratio_in_unit_interval_monotone", lambda: check_ratio_bounds(1000, 12)),
    ("ratio_limit_deficit", lambda: check_limit(10**4)),
    ("pi_estimate_deficit", lambda: check_pi_estimate()),
    ("convergence_slope", lambda: check_convergence([10**3, 10**4, 10**5, 10**6])),
    ("quadrature_vs_analytic", lambda: check_quadrature(list(_random_states(100)))),
    ("numeric_minimize", lambda: check_minimize(20, 8)),
    ("eigensolver_vs_exact", lambda: check_eigensolver(_eigen_grid())),
    ("variational_upper_bound", lambda: check_variational_principle(10, 6)),
    ("uncertainty_ratio_moments", lambda: check_uncertainty(20, 8)),
    ("eigensolver_below_variational", lambda: check_eigen_bound(5, 6)),
]


def run_verify(level: str = "fast", on_check=None) -> VerifyReport:
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    report = VerifyReport()
    for name, make in (FAST_CHECKS if level == "fast" else FULL_CHECKS):
        try:
            result = make()
        except Exception as exc:  # a crashing check is a failing check
            result = Check(name, False, f"{type(exc).__name__}: {exc}", "-")
        report.checks.append(result)
        if on_check is not None:
            on_check(result)
    return report

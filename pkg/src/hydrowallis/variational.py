"""Gaussian trial states for the N-dimensional hydrogen atom.

Units: energies in me^4/2hbar^2 (one Rydberg), lengths in a = hbar^2/me^2.
In these units the radial Hamiltonian reads

    H_N = -(d^2/dr^2 + (N-1)/r d/dr - l(l+N-2)/r^2) - 2/r

and the trial state r^l exp(-beta r^2) carries the dimensionless parameter
beta = alpha * a^2.  With a = l + N/2 and G = Gamma(l+(N-1)/2)/Gamma(l+N/2):

    <H>(beta) = 2 beta a - 2 G sqrt(2 beta)

which is an upward parabola in x = sqrt(2 beta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath

from ._validate import check_ell_dim as _check, require_int as _require_int
from .exactnum import HalfInteger, PiTaggedRational, gamma_ratio_exact

__all__ = [
    "QuantumNumbers",
    "TrialState",
    "Minimum",
    "expectation_energy",
    "analytic_minimum",
    "exact_energy",
    "accuracy_ratio",
    "dimension_shift_identity",
    "uncertainty_ratio",
    "gamma_quotient",
]


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int
    ell: int
    dim: int

    def __post_init__(self):
        _require_int("n_r", self.n_r, 0)
        _check(self.ell, self.dim)

    @property
    def effective_n(self) -> Fraction:
        """n_r + l + (N-1)/2, the principal number of the exact level."""
        return self.n_r + self.ell + Fraction(self.dim - 1, 2)


@dataclass(frozen=True)
class TrialState:
    beta: float
    ell: int
    dim: int

    def __post_init__(self):
        _check(self.ell, self.dim)
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta!r}")


class Minimum(NamedTuple):
    beta_star: PiTaggedRational
    energy: PiTaggedRational


def gamma_quotient(ell: int, dim: int) -> PiTaggedRational:
    """G = Gamma(l + (N-1)/2) / Gamma(l + N/2), exactly."""
    ell, dim = _check(ell, dim)
    return gamma_ratio_exact(HalfInteger(2 * ell + dim - 1), HalfInteger(2 * ell + dim))


def _gamma_quotient_mp(ell, dim):
    c = mpmath.mpf(2 * ell + dim - 1) / 2
    return mpmath.exp(mpmath.loggamma(c) - mpmath.loggamma(c + mpmath.mpf(1) / 2))


def expectation_energy(state: TrialState, prec: int | None = None):
    """<H> of the trial state in Rydbergs.

    Returns a float, or an ``mpmath.mpf`` evaluated at ``prec`` bits when
    ``prec`` is given (the minimizer needs more than double precision to
    resolve the flat bottom of the parabola).
    """
    ell, dim = state.ell, state.dim
    work = (prec or 53) + 32
    with mpmath.workprec(work):
        beta = mpmath.mpf(state.beta)
        g = _gamma_quotient_mp(ell, dim)
        a = mpmath.mpf(2 * ell + dim) / 2
        e = 2 * beta * a - 2 * g * mpmath.sqrt(2 * beta)
    if prec is None:
        return float(e)
    with mpmath.workprec(prec):
        return +e


def analytic_minimum(ell: int, dim: int) -> Minimum:
    """Minimizer beta* = G^2/(2a^2) and minimum -G^2/a, both exact."""
    g = gamma_quotient(ell, dim)
    a = Fraction(2 * ell + dim, 2)
    g2 = g * g
    return Minimum(beta_star=g2 / (2 * a * a), energy=-(g2 / a))


def exact_energy(q: QuantumNumbers) -> Fraction:
    """Exact level -1/(n_r + l + (N-1)/2)^2."""
    return -1 / q.effective_n**2


def accuracy_ratio(ell: int, dim: int) -> PiTaggedRational:
    """Variational minimum over the exact n_r = 0 level; lies in (0, 1)."""
    ell, dim = _check(ell, dim)
    c = Fraction(2 * ell + dim - 1, 2)
    a = c + Fraction(1, 2)
    g = gamma_quotient(ell, dim)
    return g * g * (c * c / a)


def dimension_shift_identity(ell: int, k: int) -> tuple[PiTaggedRational, PiTaggedRational]:
    """Odd dimension N = 2k+1 at l versus three dimensions at l + k - 1."""
    ell = _require_int("ell", ell, 0)
    k = _require_int("k", k, 1)
    return accuracy_ratio(ell, 2 * k + 1), accuracy_ratio(ell + k - 1, 3)


def uncertainty_ratio(ell: int, dim: int) -> float:
    """Relative spread of r^2 in the trial state, (l + N/2)^(-1/2).

    Independent of beta: <r^2> = a/(2 beta) and <r^4> = a(a+1)/(2 beta)^2.
    """
    ell, dim = _check(ell, dim)
    return 1.0 / math.sqrt(ell + dim / 2)

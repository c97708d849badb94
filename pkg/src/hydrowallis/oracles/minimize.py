"""Numerical minimization of <H> over the trial parameter."""
from __future__ import annotations

import math

import mpmath

from .._validate import check_ell_dim
from ..variational import TrialState, expectation_energy

__all__ = ["golden_section", "numeric_minimize"]

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section(f, a, b, xtol):
    """Golden-section search for a unimodal ``f`` on [a, b].

    Works with floats or mpmath numbers; returns the midpoint of the final
    bracket, whose width is below ``xtol``.
    """
    inv_phi = (mpmath.sqrt(5) - 1) / 2 if isinstance(a, mpmath.mpf) else INV_PHI
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return (a + b) / 2


def numeric_minimize(ell: int, dim: int, tol: float = 1e-10, prec: int = 160) -> tuple[float, float]:
    """(beta_hat, E_hat) by golden-section search on x = sqrt(2 beta).

    <H> is an upward parabola in x with minimizer G/(l + N/2), so
    [0, 4G/(l + N/2)] brackets it.  Evaluation runs at ``prec`` bits:
    near the minimum <H> is flat, and at double precision x could only
    be located to about 1e-8.
    """
    ell, dim = check_ell_dim(ell, dim)
    if not tol >= 1e-14:
        raise ValueError("tol must be >= 1e-14")
    with mpmath.workprec(prec):
        c = mpmath.mpf(2 * ell + dim - 1) / 2
        g = mpmath.gamma(c) / mpmath.gamma(c + mpmath.mpf(1) / 2)
        a = c + mpmath.mpf(1) / 2
        hi = 4 * g / a

        def energy(x):
            return expectation_energy(TrialState(x * x / 2, ell, dim), prec=prec)

        # x_hat to relative tol/8 gives beta = x^2/2 to about tol/4
        x_hat = golden_section(energy, mpmath.mpf(0), hi, xtol=hi * tol / 32)
        if not 0 < x_hat < hi:
            raise RuntimeError("golden-section bracket failed")
        beta_hat = x_hat * x_hat / 2
        e_hat = energy(x_hat)
    return float(beta_hat), float(e_hat)

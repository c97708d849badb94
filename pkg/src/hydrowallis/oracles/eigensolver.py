"""Finite-difference eigensolver for the N-dimensional radial equation.

With u = r^((N-1)/2) R the radial equation becomes one-dimensional,

    -u'' + [Lam (Lam + 1)/r^2 - 2/r] u = E u,   Lam = l + (N-3)/2,

discretized on a uniform grid with Dirichlet walls.  Two stencils:

``plain``
    nodes r_i = i h, i = 1..M-1, three-point second difference.
``flux``
    cell centres r_i = (i - 1/2) h, the operator -(r^(N-1) R')'/r^(N-1)
    in conservative form with zero flux through r = 0, symmetrised into
    u-variables.  Needed for Lam = -1/2 (N = 2, l = 0): there the plain
    stencil's error decays only logarithmically in h, while the flux form
    stays second order.

Both give a symmetric tridiagonal matrix.  The eigenvalue is reported from
grids M and 2M with a Richardson correction for the O(h^2) error.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ..variational import QuantumNumbers

__all__ = [
    "EigensolverSpec",
    "EigenResult",
    "ResolutionError",
    "radial_eigensolve",
    "radial_eigenvalue",
    "default_rmax",
]


class ResolutionError(ArithmeticError):
    """Richardson error estimate exceeds the requested tolerance."""


@dataclass(frozen=True)
class EigensolverSpec:
    grid_points: int = 40000
    r_max: float | None = None
    tol: float | None = None
    stencil: str = "auto"

    def __post_init__(self):
        if self.grid_points < 1000:
            raise ValueError("grid_points must be >= 1000")
        if self.r_max is not None and not self.r_max > 0:
            raise ValueError("r_max must be positive")
        if self.stencil not in ("auto", "plain", "flux"):
            raise ValueError("stencil must be 'auto', 'plain' or 'flux'")


class EigenResult(NamedTuple):
    energy: float
    error_estimate: float
    coarse: float
    fine: float


def default_rmax(q: QuantumNumbers) -> float:
    """40 n_eff^2 with n_eff = n_r + l + (N-1)/2 (the level's decay length scales as n_eff)."""
    return 40.0 * float(q.effective_n) ** 2


def _stencil(q: QuantumNumbers, spec: EigensolverSpec) -> str:
    if spec.stencil != "auto":
        return spec.stencil
    lam = q.ell + Fraction(q.dim - 3, 2)
    return "flux" if lam < 0 else "plain"


def radial_eigenvalue(q: QuantumNumbers, M: int, r_max: float, stencil: str = "plain") -> float:
    """(n_r+1)-th lowest eigenvalue on a single grid of M intervals."""
    n, ell = q.dim, q.ell
    h = r_max / M
    if stencil == "plain":
        r = h * np.arange(1, M)
        lam = ell + (n - 3) / 2
        diag = 2 / h**2 + lam * (lam + 1) / r**2 - 2 / r
        off = np.full(M - 2, -1 / h**2)
    elif stencil == "flux":
        r = h * (np.arange(1, M + 1) - 0.5)
        face = h * np.arange(M + 1)
        # ratios to the cell-centre weight, kept O(1) for large N
        p_lo = (face[:-1] / r) ** (n - 1)
        p_hi = (face[1:] / r) ** (n - 1)
        diag = (p_lo + p_hi) / h**2 + ell * (ell + n - 2) / r**2 - 2 / r
        # -p_{i+1/2} / (h^2 sqrt(m_i m_{i+1})) with m = r^(N-1)
        off = -((face[1:-1] ** 2 / (r[:-1] * r[1:])) ** ((n - 1) / 2)) / h**2
    else:
        raise ValueError(f"unknown stencil {stencil!r}")
    w = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                         select_range=(q.n_r, q.n_r))
    return float(w[0])


def radial_eigensolve(q: QuantumNumbers, spec: EigensolverSpec = EigensolverSpec()) -> EigenResult:
    """Eigenvalue with Richardson extrapolation from grids M and 2M.

    ``error_estimate`` = |E_2M - E_M| / 3, the estimated error of the
    fine-grid value (a conservative bound for the extrapolated one).
    """
    r_max = spec.r_max if spec.r_max is not None else default_rmax(q)
    stencil = _stencil(q, spec)
    M = spec.grid_points
    coarse = radial_eigenvalue(q, M, r_max, stencil)
    fine = radial_eigenvalue(q, 2 * M, r_max, stencil)
    correction = (fine - coarse) / 3
    result = EigenResult(fine + correction, abs(correction), coarse, fine)
    tol = spec.tol if spec.tol is not None else default_tolerance(q)
    if result.error_estimate > tol:
        raise ResolutionError(
            f"Richardson estimate {result.error_estimate:.3g} exceeds tolerance {tol:.3g} "
            f"at M={M}; double grid_points (try {2 * M})"
        )
    return result


def default_tolerance(q: QuantumNumbers) -> float:
    return 1e-5 if (q.dim == 2 and q.ell == 0) else 1e-6

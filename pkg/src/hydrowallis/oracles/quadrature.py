"""Adaptive Gauss-Kronrod quadrature of the trial-state radial integrals.

Integrals run over r on [0, r_cut] where r_cut comes from the Gaussian tail
bound of the integrand.  The integrands are polynomial times exp(-2 beta r^2),
hence smooth on the closed interval; the 7/15-point pair never samples the
endpoint r = 0.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from ..variational import TrialState

__all__ = [
    "QuadratureSpec",
    "QuadratureConvergenceError",
    "gauss_kronrod",
    "integrate",
    "tail_cutoff",
    "quadrature_expectation",
    "quadrature_moment",
    "quadrature_uncertainty",
]

# Kronrod 15-point nodes (positive half) and weights; Gauss 7-point weights
# sit on the odd-indexed Kronrod nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-12
    r_cut: float | None = None
    max_depth: int = 40
    max_intervals: int = 2000

    def __post_init__(self):
        if not 0 < self.rel_tol < 1e-6:
            raise ValueError("rel_tol must lie in (0, 1e-6)")
        if self.r_cut is not None and not self.r_cut > 0:
            raise ValueError("r_cut must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


class QuadratureConvergenceError(ArithmeticError):
    def __init__(self, estimate, error):
        super().__init__(f"quadrature did not converge: estimate={estimate!r} error<={error!r}")
        self.estimate = estimate
        self.error = error


def gauss_kronrod(f, a, b):
    """K15 estimate on [a, b] and |K15 - G7| as the error bound.

    ``f`` is vectorised over a numpy array of abscissae and may return
    several integrands stacked along axis 0.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(f(mid + half * NODES))
    k = half * (vals @ KRONROD_WEIGHTS)
    g = half * (vals @ GAUSS_WEIGHTS)
    return k, np.abs(k - g)


def integrate(f, a, b, rel_tol=1e-12, abs_tol=0.0, max_depth=40, max_intervals=2000):
    """Globally adaptive bisection on the interval with the largest error.

    Vector-valued integrands are accepted; every component must meet the
    tolerance.  Raises :class:`QuadratureConvergenceError` with the best
    estimate if ``max_depth`` or ``max_intervals`` is exhausted first.
    """
    k, err = gauss_kronrod(f, a, b)
    k = np.atleast_1d(k)
    err = np.atleast_1d(err)
    total = k.copy()
    total_err = err.copy()
    # heap keyed on the largest relative error component
    heap = [(-1.0, 0, a, b, k, err)]
    counter = 1
    blocked = []

    def converged():
        return np.all(total_err <= np.maximum(rel_tol * np.abs(total), abs_tol))

    while not converged():
        if not heap:
            raise QuadratureConvergenceError(_squeeze(total), _squeeze(total_err))
        _, _, lo, hi, k0, e0 = heapq.heappop(heap)
        depth = math.log2((b - a) / (hi - lo))
        if depth >= max_depth or counter >= max_intervals:
            blocked.append((lo, hi))
            continue
        mid = 0.5 * (lo + hi)
        total -= k0
        total_err -= e0
        for x0, x1 in ((lo, mid), (mid, hi)):
            k1, e1 = gauss_kronrod(f, x0, x1)
            k1 = np.atleast_1d(k1)
            e1 = np.atleast_1d(e1)
            total += k1
            total_err += e1
            scale = np.maximum(np.abs(total), 1e-300)
            heapq.heappush(heap, (-float(np.max(e1 / scale)), counter, x0, x1, k1, e1))
            counter += 1
    return _squeeze(total), _squeeze(total_err)


def _squeeze(x):
    return float(x[0]) if x.size == 1 else x


def tail_cutoff(beta: float, power: float, rel_tol: float) -> float:
    """Radius beyond which r^power exp(-2 beta r^2) is below rel_tol*1e-3 of its peak."""
    r_peak = math.sqrt(max(power, 0.0) / (4 * beta)) if power > 0 else 0.0

    def log_f(r):
        return (power * math.log(r) if power > 0 else 0.0) - 2 * beta * r * r

    target = (log_f(r_peak) if r_peak > 0 else 0.0) + math.log(rel_tol * 1e-3)
    r = max(r_peak, 1.0 / math.sqrt(beta))
    while log_f(r) > target:
        r *= 1.25
    return r


def _cutoff(s: TrialState, spec: QuadratureSpec, extra_power: int):
    if spec.r_cut is not None:
        return spec.r_cut
    return tail_cutoff(s.beta, 2 * s.ell + s.dim - 1 + extra_power, spec.rel_tol)


def _radial(s: TrialState):
    beta, ell = s.beta, s.ell

    def R(r):
        return r**ell * np.exp(-beta * r * r)

    def dR(r):
        # d/dr [r^l exp(-beta r^2)]
        return (ell * r ** (ell - 1) if ell else 0.0) * np.exp(-beta * r * r) - 2 * beta * r * R(r)

    def d2R(r):
        e = np.exp(-beta * r * r)
        t0 = ell * (ell - 1) * r ** (ell - 2) if ell >= 2 else 0.0
        t1 = -2 * beta * (2 * ell + 1) * r**ell
        t2 = 4 * beta**2 * r ** (ell + 2)
        return (t0 + t1 + t2) * e

    return R, dR, d2R


def _energy_integrands(s: TrialState, kinetic: str):
    R, dR, d2R = _radial(s)
    n, ell = s.dim, s.ell
    centrifugal = ell * (ell + n - 2)

    def f(r):
        w = r ** (n - 1)
        Rr = R(r)
        norm = Rr * Rr * w
        if kinetic == "parts":
            kin = dR(r) ** 2 * w
        else:
            kin = -Rr * (d2R(r) + (n - 1) / r * dR(r)) * w
        if centrifugal:
            kin = kin + centrifugal * Rr * Rr * r ** (n - 3)
        pot = -2 * Rr * Rr * r ** (n - 2)
        return np.stack([norm, kin, pot])

    return f


def quadrature_expectation(s: TrialState, spec: QuadratureSpec = QuadratureSpec(),
                           kinetic: str = "parts") -> float:
    """<H> in Rydbergs by direct radial quadrature.

    ``kinetic="parts"`` integrates (R')^2 r^(N-1) (after integrating by
    parts); ``kinetic="direct"`` integrates -R (R'' + (N-1)/r R') r^(N-1).
    """
    if kinetic not in ("parts", "direct"):
        raise ValueError("kinetic must be 'parts' or 'direct'")
    r_cut = _cutoff(s, spec, 2)
    (norm, kin, pot), _ = integrate(
        _energy_integrands(s, kinetic), 0.0, r_cut,
        rel_tol=spec.rel_tol, max_depth=spec.max_depth, max_intervals=spec.max_intervals,
    )
    return (kin + pot) / norm


def quadrature_moment(s: TrialState, k: int, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """<r^k> under the trial density R^2 r^(N-1), for k in {2, 4}."""
    if k not in (2, 4):
        raise ValueError("moment order must be 2 or 4")
    return _moments(s, spec)[k]


def _moments(s, spec):
    R, _, _ = _radial(s)
    n = s.dim

    def f(r):
        rho = R(r) ** 2 * r ** (n - 1)
        r2 = r * r
        return np.stack([rho, rho * r2, rho * r2 * r2])

    (m0, m2, m4), _ = integrate(
        f, 0.0, _cutoff(s, spec, 4),
        rel_tol=spec.rel_tol, max_depth=spec.max_depth, max_intervals=spec.max_intervals,
    )
    return {2: m2 / m0, 4: m4 / m0}


def quadrature_uncertainty(s: TrialState, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """sqrt(<r^4> - <r^2>^2) / <r^2> from quadrature moments."""
    m = _moments(s, spec)
    return math.sqrt(m[4] - m[2] ** 2) / m[2]

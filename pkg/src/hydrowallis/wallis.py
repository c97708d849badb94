"""Partial Wallis products and their exact link to the variational ratio.

P(L) = prod_{j=1..L} 4j^2/(4j^2-1)   increases to pi/2
Q(L) = 1/P(L)                         decreases to 2/pi

Exact mode multiplies the integer factors directly (a product tree, no
Gamma functions), so comparing against ``accuracy_ratio`` is a genuine
cross-check.  Float mode keeps a running product in mpmath at 128 bits or
more, in fixed left-to-right order.

The convergence rate 1 - 2P(L)/pi ~ 1/(4L) is not a stated result of the
underlying derivation; it is our own reading of the Gamma-ratio asymptotics
and is measured numerically by :func:`convergence_order`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import mpmath
import numpy as np

from .exactnum import HALF_PI, PiTaggedRational
from ._validate import check_ell_dim as _check, require_int as _require_int
from .variational import accuracy_ratio

__all__ = [
    "EXACT_LIMIT",
    "ResourceLimitError",
    "RunningProduct",
    "wallis_partial",
    "wallis_reciprocal_partial",
    "bridge_odd",
    "bridge_even",
    "pi_estimate",
    "convergence_order",
    "accuracy_ratio_float",
    "ConvergenceRecord",
    "scan",
]

EXACT_LIMIT = 10**5
MIN_FLOAT_PREC = 128
_BLOCK = 32


class ResourceLimitError(RuntimeError):
    """Exact product requested beyond the memory guard."""


def _tree_product(lo: int, hi: int, factor) -> int:
    """prod(factor(j) for j in range(lo, hi)) by binary splitting."""
    if hi - lo <= 16:
        out = 1
        for j in range(lo, hi):
            out *= factor(j)
        return out
    mid = (lo + hi) // 2
    return _tree_product(lo, mid, factor) * _tree_product(mid, hi, factor)


def _exact_partial(L: int) -> Fraction:
    if L > EXACT_LIMIT:
        raise ResourceLimitError(
            f"exact Wallis product limited to L <= {EXACT_LIMIT} (got {L}); use exact=False"
        )
    num = _tree_product(1, L + 1, lambda j: 4 * j * j)
    den = _tree_product(1, L + 1, lambda j: 4 * j * j - 1)
    return Fraction(num, den)


class RunningProduct:
    """Float partial Wallis product that can be advanced term by term.

    Rounding happens only when a block of 32 factors (aligned at absolute
    index 32i) is folded in, so the value at a given L does not depend on
    the sequence of ``advance_to`` calls that reached it.
    """

    def __init__(self, prec: int = MIN_FLOAT_PREC, reciprocal: bool = False):
        self.prec = max(int(prec), MIN_FLOAT_PREC)
        self.reciprocal = reciprocal
        self.terms = 0
        with mpmath.workprec(self.prec):
            self._acc = mpmath.mpf(1)
        self._num = 1
        self._den = 1

    def advance_to(self, L: int) -> None:
        if L < self.terms:
            raise ValueError("RunningProduct cannot go backwards")
        with mpmath.workprec(self.prec):
            for j in range(self.terms + 1, L + 1):
                q = 4 * j * j
                self._num *= q
                self._den *= q - 1
                if j % _BLOCK == 0:
                    self._acc = self._fold(self._acc)
                    self._num = self._den = 1
        self.terms = L

    def _fold(self, acc):
        if self.reciprocal:
            return acc * self._den / self._num
        return acc * self._num / self._den

    @property
    def value(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec):
            return self._fold(self._acc)


def _check_terms(L) -> int:
    return _require_int("L", L, 1)


def wallis_partial(L: int, exact: bool = True, prec: int = MIN_FLOAT_PREC):
    """P(L).  Exact mode returns a PiTaggedRational with pi-exponent 0."""
    L = _check_terms(L)
    if exact:
        return PiTaggedRational(_exact_partial(L), 0)
    run = RunningProduct(prec)
    run.advance_to(L)
    return run.value


def wallis_reciprocal_partial(L: int, exact: bool = True, prec: int = MIN_FLOAT_PREC):
    """Q(L) = prod (2j-1)(2j+1)/(2j)^2."""
    L = _check_terms(L)
    if exact:
        return PiTaggedRational(1 / _exact_partial(L), 0)
    run = RunningProduct(prec, reciprocal=True)
    run.advance_to(L)
    return run.value


def bridge_odd(ell: int) -> tuple[PiTaggedRational, PiTaggedRational]:
    """(P(l+1), (pi/2) * accuracy_ratio(l, 3)); equal exactly."""
    ell = _require_int("ell", ell, 0)
    return wallis_partial(ell + 1), HALF_PI * accuracy_ratio(ell, 3)


def bridge_even(ell: int, k: int) -> tuple[PiTaggedRational, PiTaggedRational]:
    """(accuracy_ratio(l, 2k), (pi/2) Q(m) 2m/(2m+1)) with m = l + k."""
    ell = _require_int("ell", ell, 0)
    k = _require_int("k", k, 1)
    m = ell + k
    rhs = HALF_PI * wallis_reciprocal_partial(m) * Fraction(2 * m, 2 * m + 1)
    return accuracy_ratio(ell, 2 * k), rhs


def pi_estimate(L: int, prec: int = MIN_FLOAT_PREC) -> mpmath.mpf:
    """2 P(L) from the running product, returned at ``prec`` bits."""
    L = _check_terms(L)
    run = RunningProduct(prec)
    run.advance_to(L)
    with mpmath.workprec(max(prec, 53)):
        return 2 * run.value


def convergence_order(Lgrid: Iterable[int], prec: int = MIN_FLOAT_PREC) -> tuple[float, float]:
    """Least-squares fit log(1 - 2P(L)/pi) = slope*log(L) + log(coeff).

    Expect slope -1 and coeff 1/4.  No acceleration is applied.
    """
    grid = [_check_terms(L) for L in Lgrid]
    if len(grid) < 3:
        raise ValueError("convergence_order needs at least 3 grid points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("Lgrid must be strictly increasing")
    run = RunningProduct(prec)
    logs = []
    for L in grid:
        run.advance_to(L)
        with mpmath.workprec(run.prec):
            deficit = 1 - 2 * run.value / mpmath.pi
            logs.append(float(mpmath.log(deficit)))
    slope, intercept = np.polyfit(np.log(np.array(grid, dtype=float)), np.array(logs), 1)
    return float(slope), float(math.exp(intercept))


def accuracy_ratio_float(ell: int, dim: int, prec: int = 256) -> mpmath.mpf:
    """accuracy_ratio via log-Gamma; usable for l far beyond exact range."""
    ell, dim = _check(ell, dim)
    with mpmath.workprec(prec + 32):
        c = mpmath.mpf(2 * ell + dim - 1) / 2
        a = c + mpmath.mpf(1) / 2
        log_g = mpmath.loggamma(c) - mpmath.loggamma(a)
        r = mpmath.exp(2 * log_g + 2 * mpmath.log(c) - mpmath.log(a))
    with mpmath.workprec(prec):
        return +r


@dataclass(frozen=True)
class ConvergenceRecord:
    """One scan row.

    ``partial`` is P(m) for odd N = 2k+1 and Q(m) for even N = 2k, with
    m = l + k.  ``pi_estimate`` replaces the accuracy ratio by its limit 1
    in the exact bridge: 2 P(m) for odd N, (2m+1)/(m Q(m)) for even N.
    """

    ell: int
    dim: int
    ratio: float
    partial: float
    pi_estimate: float

    @property
    def abs_error(self) -> float:
        with mpmath.workprec(MIN_FLOAT_PREC):
            return float(abs(mpmath.pi - mpmath.mpf(self.pi_estimate)))

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "dim": self.dim,
            "ratio": self.ratio,
            "partial_product": self.partial,
            "pi_estimate": self.pi_estimate,
            "abs_error": self.abs_error,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConvergenceRecord":
        return cls(int(d["ell"]), int(d["dim"]), float(d["ratio"]),
                   float(d["partial_product"]), float(d["pi_estimate"]))


def scan(ell_max: int, dim: int, step: int = 1, prec: int = 53) -> Iterator[ConvergenceRecord]:
    """Records for l = 0, step, 2 step, ... <= ell_max, in ascending order."""
    ell_max, dim = _check(ell_max, dim)
    step = _require_int("step", step, 1)
    k = dim // 2
    odd = dim % 2 == 1
    run = RunningProduct(prec, reciprocal=not odd)
    for ell in range(0, ell_max + 1, step):
        m = ell + k
        run.advance_to(m)
        with mpmath.workprec(run.prec):
            part = run.value
            est = 2 * part if odd else (2 * m + 1) / (m * part)
        yield ConvergenceRecord(
            ell=ell,
            dim=dim,
            ratio=float(accuracy_ratio_float(ell, dim, max(prec, 53))),
            partial=float(part),
            pi_estimate=float(est),
        )

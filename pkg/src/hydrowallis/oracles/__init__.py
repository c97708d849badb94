"""Independent numerical checks of the closed-form results."""
from .eigensolver import (EigenResult, EigensolverSpec, ResolutionError,
                          radial_eigensolve, radial_eigenvalue)
from .minimize import golden_section, numeric_minimize
from .quadrature import (QuadratureConvergenceError, QuadratureSpec, integrate,
                         quadrature_expectation, quadrature_moment,
                         quadrature_uncertainty)

__all__ = [
    "EigenResult", "EigensolverSpec", "ResolutionError", "radial_eigensolve",
    "radial_eigenvalue", "golden_section", "numeric_minimize",
    "QuadratureConvergenceError", "QuadratureSpec", "integrate",
    "quadrature_expectation", "quadrature_moment", "quadrature_uncertainty",
]

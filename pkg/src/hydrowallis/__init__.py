"""Variational hydrogen in N dimensions and the Wallis product for pi."""
from .exactnum import (HalfInteger, PiTaggedRational, double_factorial,
                       gamma_exact, gamma_ratio_exact, to_float)
from .variational import (Minimum, QuantumNumbers, TrialState, accuracy_ratio,
                          analytic_minimum, dimension_shift_identity,
                          exact_energy, expectation_energy, uncertainty_ratio)
from .wallis import (ConvergenceRecord, accuracy_ratio_float, bridge_even,
                     bridge_odd, convergence_order, pi_estimate,
                     wallis_partial, wallis_reciprocal_partial)

__version__ = "0.1.0"

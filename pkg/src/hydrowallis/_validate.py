"""Argument checks shared by the public functions."""
import numbers


def require_int(name, value, lo):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < lo:
        raise ValueError(f"{name} must be >= {lo}, got {value}")
    return int(value)


def check_ell_dim(ell, dim):
    return require_int("ell", ell, 0), require_int("dim", dim, 2)

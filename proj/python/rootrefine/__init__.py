"""Certified refinement of polynomial roots from isolated discs.

Coefficients are given low to high. Each may be a decimal or hexadecimal-float
string, an int or float, a complex, or an (re, im) pair of those. Results
carry exact decimal strings; ``to_complex`` turns a pair into a Python complex.
"""

from ._rootrefine import (
    ContourProximityError,
    ContractViolation,
    DivergenceError,
    InsufficientPrecision,
    RootRefineError,
    extract_factor,
    oracle_roots,
    power_sums,
    refine,
    refine_all,
    working_precision_for,
)

__all__ = [
    "ContourProximityError",
    "ContractViolation",
    "DivergenceError",
    "InsufficientPrecision",
    "RootRefineError",
    "extract_factor",
    "oracle_roots",
    "power_sums",
    "refine",
    "refine_all",
    "to_complex",
    "working_precision_for",
]


def to_complex(pair):
    """(re, im) decimal strings to a Python complex (rounded to double)."""
    return complex(float(pair[0]), float(pair[1]))

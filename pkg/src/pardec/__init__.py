"""Parallel decomposition of processes up to branching and weak bisimilarity.

The modules build on one another:

* :mod:`pardec.syntax` parses and prints process expressions,
* :mod:`pardec.lts` generates their transition systems,
* :mod:`pardec.equiv` decides strong, branching and weak bisimilarity,
* :mod:`pardec.norms` computes weak norms and depths,
* :mod:`pardec.monoid`, :mod:`pardec.quotient` and :mod:`pardec.order`
  treat behaviours as a partial commutative monoid with an order,
* :mod:`pardec.decomp` enumerates parallel decompositions.
"""
from .decomp import check_unique, is_indecomposable, parallel_decompositions
from .equiv import Semantics, bisim, check_relation, equivalent
from .lts import DEFAULT_STATE_LIMIT, Lts, StateLimitExceeded, build_lts
from .norms import classify
from .syntax import NIL, ParseError, format_expr, parse_expr

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_STATE_LIMIT", "Lts", "NIL", "ParseError", "Semantics",
    "StateLimitExceeded", "bisim", "build_lts", "check_relation", "check_unique",
    "classify", "equivalent", "format_expr", "is_indecomposable",
    "parallel_decompositions", "parse_expr",
]

"""Decide whether a context-free language is scattered of rank at most one
under the lexicographic order, and compute its order type."""
from .grammar import Grammar, OrderedAlphabet, parse_grammar
from .limits import LimitSet, compute_inf, compute_sup, is_limit, language_limits
from .omega import UPWord, canonicalize, parse_upword
from .order_type import OrderType, Verdict, analyze, normalize_sum

__all__ = [
    "Grammar",
    "LimitSet",
    "OrderType",
    "OrderedAlphabet",
    "UPWord",
    "Verdict",
    "analyze",
    "canonicalize",
    "compute_inf",
    "compute_sup",
    "is_limit",
    "language_limits",
    "normalize_sum",
    "parse_grammar",
    "parse_upword",
]

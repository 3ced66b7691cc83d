"""Popularity of consecutive patterns in consecutive-pattern avoidance classes."""

from .classes import CLASSES, CLAIMED_LIMITS, OPEN_CLASSES, class_number, free_patterns
from .counting import (
    brute_class_size, brute_popularity, class_size, enumerate_class, popularity_exact,
    popularity_record, popularity_table, refined_counts_class11,
)
from .errors import (
    ConpopError, DomainError, InsufficientDataError, InvalidQueryError,
    MalformedInputError, NumericalError, VerificationError,
)
from .kernel import BACKEND
from .perm import (
    LENGTH3, Pattern, PatternSet, Permutation, avoids, complement,
    consecutive_occurrences, count_occurrences, reverse, reverse_complement, standardize,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CLASSES", "CLAIMED_LIMITS", "OPEN_CLASSES", "class_number", "free_patterns",
    "brute_class_size", "brute_popularity", "class_size", "enumerate_class",
    "popularity_exact", "popularity_record", "popularity_table", "refined_counts_class11",
    "ConpopError", "DomainError", "InsufficientDataError", "InvalidQueryError",
    "MalformedInputError", "NumericalError", "VerificationError",
    "LENGTH3", "Pattern", "PatternSet", "Permutation", "avoids", "complement",
    "consecutive_occurrences", "count_occurrences", "reverse", "reverse_complement",
    "standardize",
]

"""Fraction sequences extracted from Ford circles by lines, with exact counting and approximations."""

from fordseq.errors import ConfigurationError, DomainError, FordError, InconsistencyError, ResourceLimitError
from fordseq.geometry import ReducedFraction

__all__ = [
    "ConfigurationError",
    "DomainError",
    "FordError",
    "InconsistencyError",
    "ReducedFraction",
    "ResourceLimitError",
]

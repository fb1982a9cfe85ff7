"""Exceptions raised by fordseq."""


class FordError(Exception):
    """Base class for all fordseq errors."""


class DomainError(FordError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceLimitError(FordError, MemoryError):
    """A requested table or exact sum exceeds its size budget."""


class ConfigurationError(FordError):
    """An environment setting could not be interpreted."""


class InconsistencyError(FordError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class UsageError(FordError):
    """Command-line flags are missing or malformed."""

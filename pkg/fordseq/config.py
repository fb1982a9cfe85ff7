"""Environment-driven configuration."""

import logging
import os

from fordseq.constants import DEFAULT_SIEVE_LIMIT, MAX_SIEVE_LIMIT, SIEVE_LIMIT_ENV_VAR
from fordseq.errors import ConfigurationError, ResourceLimitError

logger = logging.getLogger(__name__)


def get_sieve_limit() -> int:
    """Return the sieve size configured for this process.

    Returns:
        The value of the FORD_SIEVE_LIMIT environment variable, or the default limit

    Raises:
        ConfigurationError: If the variable is set but is not a positive integer
        ResourceLimitError: If the variable exceeds the memory budget
    """
    raw = os.environ.get(SIEVE_LIMIT_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_SIEVE_LIMIT

    try:
        limit = int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"{SIEVE_LIMIT_ENV_VAR} must be a positive integer, got {raw!r}")

    if limit < 1:
        raise ConfigurationError(f"{SIEVE_LIMIT_ENV_VAR} must be a positive integer, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceLimitError(f"{SIEVE_LIMIT_ENV_VAR}={limit} exceeds the sieve budget of {MAX_SIEVE_LIMIT}")

    logger.debug("Sieve limit %d taken from %s", limit, SIEVE_LIMIT_ENV_VAR)
    return limit

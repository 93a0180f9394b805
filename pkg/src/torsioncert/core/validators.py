"""Input validation for torsioncert operations.

Validators return an error message (or None) so callers can decide whether to
raise, log or collect. ``InputValidator.require`` turns a message into an
``InvalidInputError``.
"""

__all__ = ["InputValidator", "PathValidator"]

import os
from pathlib import Path
from typing import Iterable, Optional

from sympy import isprime

from .errors import InvalidInputError
from .logging_config import get_logger

logger = get_logger(__name__)


class InputValidator:
    """Validate arithmetic arguments against operation preconditions."""

    @staticmethod
    def require(error: Optional[str]) -> None:
        """Raise InvalidInputError if ``error`` is a message."""
        if error is not None:
            logger.debug("Rejected input: %s", error)
            raise InvalidInputError(error)

    @staticmethod
    def validate_prime(value: int, name: str = "p", minimum: int = 2) -> Optional[str]:
        """Check that ``value`` is a prime at least ``minimum``.

        Returns:
            Error message if invalid, None if valid
        """
        if not isinstance(value, int) or isinstance(value, bool):
            return f"{name} must be an integer, got {value!r}"
        if not isprime(value):
            return f"{name} = {value} is not prime"
        if value < minimum:
            return f"{name} = {value} is below the minimum {minimum}"
        return None

    @staticmethod
    def validate_range(value: int, low: int, high: Optional[int], name: str) -> Optional[str]:
        """Check ``low <= value`` and, if given, ``value <= high``."""
        if value < low or (high is not None and value > high):
            upper = "" if high is None else f" and <= {high}"
            return f"{name} = {value} must be >= {low}{upper}"
        return None

    @staticmethod
    def validate_unit(value: int, modulus: int, name: str = "n") -> Optional[str]:
        """Check that ``value`` is invertible modulo ``modulus``."""
        from math import gcd

        if gcd(value, modulus) != 1:
            return f"{name} = {value} is not a unit modulo {modulus}"
        return None

    @staticmethod
    def validate_degree_bound(p: int, d: int) -> Optional[str]:
        """Kamienny-type checks need 2d < p."""
        if 2 * d >= p:
            return f"criterion needs 2d < p, got d = {d}, p = {p}"
        return None

    @staticmethod
    def validate_t2_prime(q: int, p: int) -> Optional[str]:
        """The torsion killer T_q - <q> - q needs an odd prime q different from p."""
        error = InputValidator.validate_prime(q, name="q")
        if error:
            return error
        if q == 2:
            return "q = 2 cannot kill odd torsion in the reduction kernel"
        if q == p:
            return f"q must not divide the level, got q = p = {p}"
        return None

    @staticmethod
    def validate_subgroup(p: int, generators: Iterable[int]) -> Optional[str]:
        """Generators of H must be units modulo p."""
        for g in generators:
            if g % p == 0:
                return f"subgroup generator {g} is not a unit modulo {p}"
        return None


class PathValidator:
    """Validate output and cache locations before writing."""

    @staticmethod
    def validate_write_dir(path: Path) -> Optional[str]:
        """Check that ``path`` is (or can become) a writable directory.

        Returns:
            Error message if invalid, None if valid
        """
        try:
            resolved = path.expanduser().resolve()
        except (OSError, RuntimeError) as e:
            logger.error("Path validation error for %s: %s", path, e)
            return f"Path validation error: {e}"

        if resolved.exists() and not resolved.is_dir():
            return f"Not a directory: {resolved}"

        probe = resolved
        while not probe.exists():
            probe = probe.parent
        if not os.access(probe, os.W_OK):
            return f"Cannot write to directory: {probe}"
        return None

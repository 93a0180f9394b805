"""Exception hierarchy shared by every torsioncert package."""

__all__ = [
    "TorsionCertError",
    "InvalidInputError",
    "InternalConsistencyError",
    "WindingElementUnavailable",
    "HeckeSpanError",
    "CacheError",
]


class TorsionCertError(Exception):
    """Base class for all torsioncert errors."""


class InvalidInputError(TorsionCertError, ValueError):
    """An argument violates the documented precondition of an operation."""


class InternalConsistencyError(TorsionCertError, RuntimeError):
    """An exact invariant that must hold by construction was violated."""


class WindingElementUnavailable(InternalConsistencyError):
    """No Hecke operator T_q in the fallback list is invertible on the cuspidal space."""


class HeckeSpanError(InternalConsistencyError):
    """The Z-span of Hecke operators did not stabilize before the bound cap."""


class CacheError(TorsionCertError):
    """A cache file is unreadable, stale or belongs to a different presentation."""

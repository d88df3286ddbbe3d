"""Exception types shared across the package."""

from __future__ import annotations


class NearbipError(Exception):
    """Base class for all package errors."""


class CapacityError(NearbipError):
    """Raised when an input exceeds a configured size cap."""


class DomainError(NearbipError, ValueError):
    """Raised when arguments fall outside an operation's domain."""


class Graph6Error(NearbipError, ValueError):
    """Malformed graph6 text. ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset

"""Exception types shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """An argument or value violates a documented precondition."""


class ParseError(ValueError):
    """Malformed ESOP text or circuit JSON."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(RuntimeError):
    """A request would exceed an enumeration or memory cap."""


class FragmentError(ValueError):
    """A simulator met a gate outside the fragment it handles."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message)


class ModeError(ValueError):
    """A cost model was applied to a circuit it is not defined on."""

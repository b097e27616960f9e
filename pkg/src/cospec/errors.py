"""Exception types shared across the package."""

from __future__ import annotations


class CospecError(Exception):
    """Base class for all errors raised by cospec."""


class InvalidPartition(CospecError, ValueError):
    pass


class NotConnected(CospecError, ValueError):
    pass


class ShapeError(CospecError, ValueError):
    pass


class MalformedGraph6(CospecError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FUndefinedAtDistance(CospecError, ValueError):
    def __init__(self, distance: int):
        super().__init__(f"distance function has no value at distance {distance}")
        self.distance = distance


class ConstraintViolated(CospecError):
    """A candidate similarity matrix fails one of its defining equations."""

    def __init__(self, detail: str, block: tuple[int, int] | None = None):
        super().__init__(detail)
        self.detail = detail
        self.block = block


class UseExternalFile(CospecError, ValueError):
    pass

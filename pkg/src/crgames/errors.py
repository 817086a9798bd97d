"""Exception hierarchy shared by every crgames module.

Each error carries a short machine-readable ``code`` so the CLI and the
HTTP service can map failures to exit statuses / HTTP statuses without
string matching.
"""

from __future__ import annotations


class CRGamesError(Exception):
    """Base class for all crgames errors."""

    code = "error"


class ParseError(CRGamesError):
    """Malformed text expression or JSON payload."""

    code = "parse"

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset


class InvalidPositionError(CRGamesError):
    """Construction violating the same-round matrix shape invariant."""

    code = "invalid-position"


class IllegalMoveError(CRGamesError):
    """A move that is not legal in the given state."""

    code = "illegal-move"

    def __init__(self, message: str, side: str):
        super().__init__(message)
        self.side = side  # "left" or "right"


class NoMoveError(CRGamesError):
    """Asked for a best move in a position where the player has none."""

    code = "no-move"


class ResourceLimitError(CRGamesError):
    """A configured node/size budget was exceeded."""

    code = "resource-limit"


class SizeLimitError(ResourceLimitError):
    """An oracle was asked for an instance above its enforced cap."""

    code = "size-limit"


class IterationLimitError(CRGamesError):
    """A rewrite fixpoint was not reached within the configured bound."""

    code = "iteration-limit"

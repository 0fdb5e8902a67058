"""Exception types shared across the package."""


class GatexError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(GatexError, ValueError):
    """Invalid argument: bad vertex index, empty subset, malformed structure."""


class Graph6Error(GraphError):
    """A graph6 record could not be parsed.

    ``offset`` is the 0-based byte position where parsing failed.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class SizeLimitError(GraphError):
    """Input exceeds the size an exponential routine is willing to handle."""


class NotGatexError(GatexError):
    """Raised by operations that require a GaTEx input.

    Carries the recognizer verdict so callers can report the witness.
    """

    def __init__(self, verdict):
        super().__init__("graph is not GaTEx")
        self.verdict = verdict


class InvariantError(GatexError, RuntimeError):
    """An internal consistency check failed (corrupt input or a bug)."""

class DomainError(ValueError):
    """An input that is well formed but outside an operation's domain."""


class ParseError(ValueError):
    """Malformed text or document; ``pos`` is a character offset when known."""

    def __init__(self, message: str, pos: int = None):
        super().__init__(message if pos is None else f"{message} at position {pos}")
        self.pos = pos

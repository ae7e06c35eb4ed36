"""Exception hierarchy shared by every pipeline stage.

Each error carries a short category string and a source position so that
the CLI and the HTTP service can render the same plain-text error document.
"""

from __future__ import annotations


class MizarError(Exception):
    category = "error"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        if self.line:
            return f"{self.line}:{self.col}: {self.message}"
        return self.message

    def document(self) -> str:
        """Render the four-field error document used by the CLI and service."""
        return f"error: {self.category}\nline: {self.line}\ncol: {self.col}\n{self.message}\n"


class NotationError(MizarError):
    category = "notation"


class LexError(MizarError):
    category = "lexical"


class ParseError(MizarError):
    category = "syntax"


class ResolutionError(ParseError):
    """No declared arity of a mode lets the enclosing item parse."""

    category = "resolution"

    def __init__(self, message, line=0, col=0, mode="", attempted=()):
        super().__init__(message, line, col)
        self.mode = mode
        self.attempted = tuple(attempted)


class LabelError(ParseError):
    category = "label"


class LinkError(MizarError):
    category = "link"


class ReferenceError_(MizarError):
    category = "reference"


class UnresolvedVariableError(MizarError):
    category = "scope"


class WsmFormatError(MizarError):
    category = "wsm-format"

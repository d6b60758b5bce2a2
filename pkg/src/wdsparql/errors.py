"""Shared exception types."""

from __future__ import annotations


class ParseError(Exception):
    """Syntax error in query or data input, with 1-based position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"

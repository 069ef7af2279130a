"""Errors raised on malformed model files."""

# typing
from typing import Iterable


class ParseError(RuntimeError):
    """Simple RuntimeError for syntax errors, with position and expected tokens."""

    def __init__(self, line: int, column: int, expected: Iterable[str], found: str = ""):
        """Call super with a formatted message.

        Args:
            line (int): 1-based line of the error
            column (int): 1-based column of the error
            expected (Iterable[str]): the tokens that would have been accepted
            found (str): the offending token, empty at end of input
        """
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        what = f"unexpected '{found}'" if found else "unexpected end of input"
        super().__init__(f"line {line}, column {column}: {what}, expected one of {', '.join(sorted(self.expected))}")

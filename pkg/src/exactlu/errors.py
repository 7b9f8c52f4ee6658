"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Two values from different fields were combined."""


class ParseError(ValueError):
    """A scalar token, matrix file or factor stream could not be parsed.

    ``line`` and ``column`` are 1-based positions into the offending text
    when they are known, otherwise ``None``.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class InvariantViolation(RuntimeError):
    """An internal postcondition failed; this always indicates a bug."""

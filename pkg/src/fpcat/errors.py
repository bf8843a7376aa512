class UsageError(ValueError):
    """Raised when an operation is called with arguments that violate its contract."""


class CapabilityError(Exception):
    """Raised when a category does not support the requested operation."""


class ParseError(UsageError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class UndecidedError(Exception):
    """The bounded isomorphism search neither found nor excluded an isomorphism."""

"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operand shapes are incompatible; the message carries both shapes."""


class BudgetError(RuntimeError):
    """An exact enumeration would exceed its configured bound."""

    def __init__(self, what: str, required: int, limit: int):
        super().__init__(
            f"{what} refused: needs {required} steps, limit is {limit}"
        )
        self.what = what
        self.required = required
        self.limit = limit


class PreconditionError(ValueError):
    """A documented precondition failed; carries a witness when one exists."""

    def __init__(self, message: str, witness=None):
        if witness is not None:
            message = f"{message} (witness: {witness})"
        super().__init__(message)
        self.witness = witness


class FormatError(ValueError):
    """Malformed input text; the message carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

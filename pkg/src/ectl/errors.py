"""Exception hierarchy shared by every layer of the checker."""


class EctlError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EctlError, ValueError):
    """A value violates a structural invariant, or input text is malformed.

    ``line`` and ``column`` are 1-based and only set for errors that originate
    from parsing text.
    """

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class UndecidableError(EctlError):
    """The formula combines an automaton class with an operator for which
    model checking is undecidable (a nondeterministic PDA on a release)."""

    def __init__(self, message, subformula=None):
        self.subformula = subformula
        super().__init__(message)


class CapExceeded(EctlError):
    """A determinization produced more states than the configured cap."""

    def __init__(self, message, cap):
        self.cap = cap
        super().__init__(message)

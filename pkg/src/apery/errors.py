class SingularPointError(ZeroDivisionError):
    """A coefficient denominator vanishes at the evaluation point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class SupportError(ValueError):
    """A sequence was asked for a value outside the region where it is defined."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class UnboundVariableError(KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound variable {self.name!r}"


class DSLSyntaxError(ValueError):
    """Parse error in the certificate language, with 1-based line/column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

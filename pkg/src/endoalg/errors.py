"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`AlgebraError`
so callers (the CLI in particular) can map them to exit codes.
"""


class AlgebraError(Exception):
    """Base class for library errors."""


class InputError(AlgebraError):
    """Malformed input: bad indices, scalars or files. CLI exit code 2."""


class BadIndex(InputError):
    pass


class BadScalar(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class NonAssociative(InputError):
    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or f"associativity fails on basis triple {self.triple}")


class NotSubalgebra(InputError):
    """A matrix pattern that is not closed under multiplication."""


class SizeLimit(AlgebraError):
    pass


class AlgebraMismatch(AlgebraError):
    pass


class WrongRegime(AlgebraError):
    pass


class NotEndomorphicLeft(AlgebraError):
    pass


class NotInL(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    pass


class Incomplete(AlgebraError):
    """An operation needed a complete set description and got a partial one."""


IncompleteDescription = Incomplete


class NotVeryNice(AlgebraError):
    pass


class EmptySet(AlgebraError):
    pass


class ToleranceError(AlgebraError):
    """A bracket could not be certified within the requested tolerance."""


class InvariantViolation(AlgebraError):
    """Two independent routes disagreed; indicates a bug or a false claim."""

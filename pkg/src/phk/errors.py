"""Exception hierarchy shared by every module."""


class PhkError(Exception):
    pass


class FieldMismatch(PhkError, TypeError):
    """Entries or operands come from different base fields."""


class DimensionMismatch(PhkError, ValueError):
    pass


class PreconditionError(PhkError):
    """An operation was called on input that does not satisfy its hypotheses.

    ``report`` carries the failing check when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class StructuralInconsistency(PhkError):
    """The input data contradicts a structural fact (e.g. integral spaces of dim != 1)."""


class TheoremViolation(PhkError):
    """A computed identity that must hold on valid input did not hold."""


class SpecError(PhkError, ValueError):
    """Malformed spec file; ``context`` names the offending key path."""

    def __init__(self, message, context=None):
        if context:
            message = f"{context}: {message}"
        super().__init__(message)
        self.context = context


class SingularMatrix(PhkError, ArithmeticError):
    pass

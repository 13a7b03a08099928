"""Exception hierarchy.

Everything raised for bad input derives from :class:`InputError`; the CLI maps
those to exit status 1.  :class:`InvariantViolation` signals an internal
consistency failure (exit status 2).
"""


class CTrivialError(Exception):
    pass


class InputError(CTrivialError, ValueError):
    pass


class InvariantViolation(CTrivialError, AssertionError):
    pass


class ShapeMismatch(InputError):
    pass


class CompositionNonzero(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class MTooSmall(InputError):
    pass


class CoefficientMismatch(InputError):
    pass


class NotACocycle(InputError):
    pass


class NotPure(InputError):
    pass


class NotClosed(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class ComplexMismatch(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class DimensionTooLarge(InputError):
    pass


class ProfileInconsistent(InputError):
    pass


class NotAClosedManifold(InputError):
    def __init__(self, check, message=None):
        self.check = check
        super().__init__(message or f"input is not a closed connected pseudomanifold (failed check: {check})")


class UnknownEntry(InputError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ParseError(InputError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)

"""Exception hierarchy shared by every stage of the pipeline."""


class FracGBError(Exception):
    """Base class for all package errors."""


class ArityError(FracGBError):
    """Operands live in different rings (variable count or modulus differ)."""


class ZeroPolynomialError(FracGBError):
    """An operation that needs a leading term received the zero polynomial."""


class UnassignedVariableError(FracGBError):
    """An evaluation point does not cover every variable or literal used."""


class ParseError(FracGBError):
    """Malformed instance or polynomial text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInstanceError(FracGBError):
    """A satisfied fraction was requested for an instance with no predicates."""


class ContradictionError(FracGBError):
    """Tailoring derived conflicting forced values: the input is not satisfiable."""


class EmptyAcceptableSetError(FracGBError):
    """A predicate admits no acceptable total under its fixed values."""


class TooLargeToEnumerateError(FracGBError):
    """Brute-force enumeration requested beyond the configured cap."""


class InconsistentSystemError(FracGBError):
    """Point extraction found no boolean value that keeps the system consistent."""


class NotSatisfiableError(FracGBError):
    """An instance promised to be satisfiable is not."""


class InternalError(FracGBError):
    """An invariant guaranteed by construction was violated."""

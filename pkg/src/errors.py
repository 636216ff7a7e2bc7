"""Exception hierarchy for the closure-operation engine."""

from typing import Iterable, Optional


class ClosureEngineError(Exception):
    """Base class for every error raised by the engine."""


class IncompatibleRingError(ClosureEngineError):
    """Operands live in different rings (scalar kind, variables or relations)."""


class IncompatibleOrderError(ClosureEngineError):
    """A polynomial and a Groebner basis use different monomial orders."""


class ZeroPolynomialError(ClosureEngineError):
    """An operation that needs a nonzero polynomial received zero."""


class InvalidEliminationError(ClosureEngineError):
    """Elimination asked to remove every variable of the ring."""


class GroebnerBudgetExceeded(ClosureEngineError):
    """Buchberger processed more critical pairs than the configured ceiling."""


class RingDeclarationError(ClosureEngineError):
    """A ring declaration is malformed (bad modulus, unit relations, ...)."""


class CapabilityError(ClosureEngineError):
    """An operation was requested on a ring that cannot support it."""


class UnsupportedComputationError(ClosureEngineError):
    """Only a weaker form of the requested computation is available."""


class NonRegularElementError(ClosureEngineError):
    """An element required to be a non-zerodivisor is a zero-divisor."""

    def __init__(self, element: str, role: str = "element"):
        self.element = element
        self.role = role
        super().__init__(f"{role} {element} is a zero-divisor, not a regular element")


class VerificationError(ClosureEngineError):
    """A decomposition failed verification or is used without verification."""

    def __init__(self, message: str, component: Optional[int] = None, certificate: str = ""):
        self.component = component
        self.certificate = certificate
        super().__init__(message)


class SessionError(ClosureEngineError):
    """Error in a session script, carrying a source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class ParseError(SessionError):
    """Syntax error, with the set of tokens that would have been accepted."""

    def __init__(
        self,
        message: str,
        line: int = 0,
        column: int = 0,
        expected: Optional[Iterable[str]] = None,
    ):
        self.expected = sorted(set(expected or []))
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(message, line, column)


class UndefinedNameError(SessionError):
    """Reference to a name that was never declared."""


class ArityError(SessionError):
    """Wrong number or kind of arguments/parameters."""

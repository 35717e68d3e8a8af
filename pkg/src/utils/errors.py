"""Exception hierarchy shared by every package in the toolkit.

Module-specific errors subclass one of the two branches below so callers
(and the command line front end) can tell bad input apart from a numerical
failure without knowing every concrete class.
"""


class CompositeError(Exception):
    """Base class for all errors raised by the toolkit"""
    pass


class ValidationError(CompositeError, ValueError):
    """Raised when an input, a configuration or a file fails validation"""
    pass


class NumericalError(CompositeError, ArithmeticError):
    """Raised when a computation cannot be carried out to tolerance"""
    pass

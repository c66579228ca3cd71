"""Exception types raised across the package."""


class CliffcoError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(CliffcoError, ZeroDivisionError):
    pass


class CharTwo(CliffcoError, ValueError):
    pass


class FieldError(CliffcoError, ValueError):
    """Malformed field descriptor or unparseable scalar."""


class BadIndex(CliffcoError, ValueError):
    pass


class AlgebraMismatch(CliffcoError, ValueError):
    pass


class NotInvertible(CliffcoError, ArithmeticError):
    pass


class NotSubset(CliffcoError, ValueError):
    pass


class InvalidAction(CliffcoError, ValueError):
    pass


class InvalidCoaction(CliffcoError, ValueError):
    pass


class InvalidTuple(CliffcoError, ValueError):
    pass


class NotAutomorphism(CliffcoError, ValueError):
    pass


class FlagMismatch(CliffcoError, ValueError):
    pass


class NotEven(CliffcoError, ValueError):
    pass


class NotSemisimple(CliffcoError, ValueError):
    pass


class DeltaNotSquare(CliffcoError, ValueError):
    pass


class TooLarge(CliffcoError, ValueError):
    pass


class ConfigError(CliffcoError, ValueError):
    pass

"""Exception hierarchy. Every error raised by the library derives from ``ConeError``."""


class ConeError(Exception):
    """Base class for library errors."""


class NonFinite(ConeError, ValueError):
    pass


class DimensionTooLarge(ConeError, ValueError):
    pass


class ShapeMismatch(ConeError, ValueError):
    pass


class EmptyRegion(ConeError, ValueError):
    """The requested sampling region of a cone is empty (e.g. the interior of a ray)."""


class NotExterior(ConeError, ValueError):
    pass


class Unsupported(ConeError, NotImplementedError):
    """The operation has no implementation for this cone family or map variant."""


class TotalOrder(ConeError):
    """The cone order is total, so no incomparable element exists."""


class BadEndpoints(ConeError, ValueError):
    """Bisection endpoints are not interior and exterior respectively."""


class BudgetExhausted(ConeError):
    """A randomized search ran out of attempts. This is not a proof of non-existence."""


class PreconditionViolated(ConeError, ValueError):
    pass


class NotInCone(ConeError, ValueError):
    pass


class NotPositiveFunctional(ConeError, ValueError):
    pass


class NotAutomorphism(ConeError, ValueError):
    pass


class NoExtremalWithPositivePairing(ConeError):
    pass


class NotFoundWithinRange(ConeError):
    pass


class NotNonnegative(ConeError, ValueError):
    pass


class Singular(ConeError, ValueError):
    pass


class ConfigError(ConeError, ValueError):
    """Config parse or validation failure, addressed by line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)

"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Base class for every error raised by pointflats."""


class ZeroVector(GeometryError):
    pass


class MixedAmbient(GeometryError):
    pass


class PointInCenter(GeometryError):
    pass


class KOutOfRange(GeometryError):
    pass


class EmptyPointList(GeometryError):
    pass


class AlphaOutOfRange(GeometryError):
    pass


class GammaOutOfRange(GeometryError):
    pass


class EmptyConfiguration(GeometryError):
    pass


class BudgetExceeded(GeometryError):
    pass


class PreconditionViolated(GeometryError):
    pass


class SizeOverflow(GeometryError):
    pass


class OddN(GeometryError):
    pass


class ParameterConflict(GeometryError):
    pass


class DivisibilityError(GeometryError):
    pass


class RetryLimit(GeometryError):
    pass


class ParameterError(GeometryError):
    pass


class ParseError(GeometryError):
    """Malformed configuration file.

    ``line`` and ``field`` locate the problem when known.
    """

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)

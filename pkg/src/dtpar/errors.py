"""Exception hierarchy shared by every module of the package."""


class DTParError(Exception):
    """Base class for all errors raised by :mod:`dtpar`."""


class ZeroDenominator(DTParError, ZeroDivisionError):
    pass


class ParseError(DTParError, ValueError):
    pass


class GeometryMismatch(DTParError, ValueError):
    pass


class InvalidGeometry(DTParError, ValueError):
    pass


class OutOfTruncation(DTParError, ValueError):
    pass


class NonzeroConstantTerm(DTParError, ValueError):
    pass


class ConstantTermNotOne(DTParError, ValueError):
    pass


class InadmissibleKey(DTParError, ValueError):
    pass


class BadPrimitiveTable(DTParError, ValueError):
    pass


class NonPositiveSupport(DTParError, ValueError):
    pass


class InconsistentStratum(DTParError, ValueError):
    pass


class MalformedFiltration(DTParError, ValueError):
    pass


class NotProperSubspace(DTParError, ValueError):
    pass

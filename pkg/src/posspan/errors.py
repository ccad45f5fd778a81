"""Exception hierarchy shared by all modules."""


class PosspanError(ValueError):
    """Base class for every error raised by this package."""


class ParseError(PosspanError):
    pass


class DimensionMismatch(PosspanError):
    pass


class SingularBasis(PosspanError):
    pass


class ZeroMatrix(PosspanError):
    pass


class InvalidCertificate(PosspanError):
    pass


class IsAcyclic(PosspanError):
    pass


class NotNem(PosspanError):
    pass


class NotPss(PosspanError):
    pass


class NotConnected(PosspanError):
    pass


class NotStronglyConnected(PosspanError):
    pass


class InvalidTree(PosspanError):
    pass


class InconsistentParameters(PosspanError):
    pass


class DimensionTooSmall(PosspanError):
    pass


class UnsupportedDimension(PosspanError):
    pass


class MalformedInForm(PosspanError):
    pass


class NotPositiveBasis(PosspanError):
    pass


class BadDimensions(PosspanError):
    pass


class BadParameters(PosspanError):
    pass

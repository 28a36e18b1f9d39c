"""Exception hierarchy shared by all modules."""


class CMReductionError(Exception):
    """Base class for every error raised by this package."""


# localfield
class NegativeValuation(CMReductionError, ValueError):
    pass


class ZeroPolynomial(CMReductionError, ValueError):
    pass


class UnsupportedPlace(CMReductionError, ValueError):
    pass


# weierstrass
class SingularModel(CMReductionError, ValueError):
    pass


class ZeroScale(CMReductionError, ValueError):
    pass


class ZeroTwist(CMReductionError, ValueError):
    pass


# cmclass
class NotCovered(CMReductionError, LookupError):
    """No row of the classification table matches the given (p, v(p), j) data."""


class HypothesisNotMet(CMReductionError):
    pass


class NotImaginary(CMReductionError, ValueError):
    pass


# genus2
class InvalidMu(CMReductionError, ValueError):
    pass


class MissingInvariant(CMReductionError, ValueError):
    pass


class InvalidDegree(CMReductionError, ValueError):
    pass


# corpus / cli
class ParseError(CMReductionError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

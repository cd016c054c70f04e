"""Errors raised by the pcurvature library.

Every public operation raises a subclass of :class:`PCurvatureError`, so callers
(the CLI in particular) can tell bad input apart from programming errors.
"""


class PCurvatureError(Exception):
    """Base class for all library errors."""


class ZeroInverse(PCurvatureError, ZeroDivisionError):
    """Inverse of zero requested in a finite field."""


class NotPrime(PCurvatureError, ValueError):
    """The characteristic is not a prime number."""


class EvenPrime(PCurvatureError, ValueError):
    """Characteristic 2 is not supported."""


class NotOddPrime(PCurvatureError, ValueError):
    """An odd prime was required."""


class ZeroPolynomial(PCurvatureError, ValueError):
    """Operation undefined on the zero polynomial."""


class DegenerateInput(PCurvatureError, ValueError):
    """Inputs are zero or do not have the degree the operation needs."""


class TooLarge(PCurvatureError, ValueError):
    """Request beyond the supported size bound."""


class BadComposition(PCurvatureError, ValueError):
    """A composition word has non-positive entries or the wrong weight."""


class EvenIndex(PCurvatureError, ValueError):
    """g_k is only defined for odd k."""


class SingularCurve(PCurvatureError, ValueError):
    """g(x) has repeated roots not allowed in the current mode."""


class UnsupportedP(PCurvatureError, ValueError):
    """No pipeline exists for this characteristic."""


class PositiveDimensional(PCurvatureError):
    """The solution set is not finite (an eliminant collapsed to zero)."""


class SupportViolation(PCurvatureError):
    """det of the p-curvature has a coefficient outside x-degrees {0, p, 2p}."""


class BadAlpha(PCurvatureError, ValueError):
    """Eigenvalue pair outside 1 <= alpha and 2 * alpha < p."""


class DegeneratePipeline(PCurvatureError):
    """The substitution pipeline for p = 7 does not apply to this curve.

    Attributes:
        fallback: the result of the generic elimination, when it was computed.
    """

    def __init__(self, message: str, fallback=None):
        super().__init__(message)
        self.fallback = fallback

"""Exception types raised by the library."""


class LoccError(Exception):
    """Base class for all library-specific errors."""


class DimensionMismatch(LoccError, ValueError):
    """Amplitude count does not match the product of the party dimensions."""


class NotNormalized(LoccError, ValueError):
    """State vector norm deviates from 1 beyond tolerance."""


class InvalidPartition(LoccError, ValueError):
    """Partition sides are empty, overlap, or reference unknown parties."""


class ShapeMismatch(LoccError, ValueError):
    """Two states (or a state and an operator) have incompatible shapes."""


class NotUnitary(LoccError, ValueError):
    """Matrix fails the unitarity check."""


class NotTraceless(LoccError, ValueError):
    """Matrix trace exceeds tolerance; the source states are not orthogonal."""


class NotOrthogonal(LoccError, ValueError):
    """Inner product of the two candidate states exceeds tolerance."""


class NotMutuallyOrthogonal(LoccError, ValueError):
    """Some pair in a candidate set has a non-negligible inner product."""


class TooFewParties(LoccError, ValueError):
    """Operation requires more parties than the states provide."""


class TooFewStates(LoccError, ValueError):
    """Operation requires at least two candidate states."""


class ParseError(LoccError, ValueError):
    """State interchange document is malformed or contains NaN/Inf."""


class ZerodiagonalizationError(LoccError, ArithmeticError):
    """Residual diagonal after the rotation cascade exceeded tolerance.

    This should never happen for a traceless input; it is raised (not
    swallowed) so convention slips in the angle equations surface loudly.
    """

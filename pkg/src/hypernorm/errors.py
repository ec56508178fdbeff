"""Exception hierarchy.

Every error raised by the library derives from :class:`HypernormError`,
which is itself a :class:`ValueError`, so callers that only care about
"bad input" can catch that.
"""


class HypernormError(ValueError):
    pass


class BadOrder(HypernormError):
    """Tensor order r < 2, or the wrong number of factors/blocks."""


class IndexOutOfRange(HypernormError):
    pass


class DuplicateIndex(HypernormError):
    pass


class BadPermutation(HypernormError):
    pass


class NotCubical(HypernormError):
    pass


class NotSymmetric(HypernormError):
    pass


class DimMismatch(HypernormError):
    pass


class BadExponent(HypernormError):
    pass


class NegativeEntries(HypernormError):
    pass


class NonPositiveVector(HypernormError):
    pass


class NotRegular(HypernormError):
    pass


class NotOrder2(HypernormError):
    pass


class VertexOutOfRange(HypernormError):
    pass


class BadParameter(HypernormError):
    pass


class NotPartite(HypernormError):
    pass


class TooLarge(HypernormError):
    pass


class UnknownInstance(HypernormError):
    pass


class FormatError(HypernormError):
    """Malformed ``rtensor-v1`` / ``rgraph-v1`` document."""

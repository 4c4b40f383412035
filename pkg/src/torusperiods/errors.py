"""Exception hierarchy shared by all modules.

Every error derives from :class:`TorusError` (itself a ``ValueError``) so
callers such as the command line can catch one type and report the class
name as the failed invariant.
"""


class TorusError(ValueError):
    """Base class for validation failures."""


class DimensionMismatch(TorusError):
    pass


class IndexOutOfRange(TorusError):
    pass


class DegreeMismatch(TorusError):
    pass


class SingularMatrix(TorusError):
    pass


class SubNotContained(TorusError):
    pass


class RankMismatch(TorusError):
    pass


class SingularPeriodMatrix(TorusError):
    pass


class NotUnimodular(TorusError):
    pass


class NotInvolution(TorusError):
    pass


class NotAntilinear(TorusError):
    pass


class WrongFixedRank(TorusError):
    pass


class DegenerateFixedLattice(TorusError):
    pass


class InvalidCounts(TorusError):
    pass

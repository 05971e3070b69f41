"""Exception hierarchy shared by every module."""


class KemenyError(ValueError):
    """Base class for all errors raised by kemeny_stats."""


class DimensionError(KemenyError):
    """Two samples that must be paired have different lengths."""


class DomainError(KemenyError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(KemenyError):
    """Input is constant, or a derived concentration is not positive."""


class PerfectCorrelationError(DegenerateInputError):
    """A t-transform was requested for a correlation of exactly +1 or -1."""


class CostGuardError(KemenyError):
    """An exhaustive enumeration was requested beyond the default size bound."""


class DataError(KemenyError):
    """Malformed tabular input."""

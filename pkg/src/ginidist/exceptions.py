"""Exception and warning types shared across the package.

All errors derive from :class:`ValueError` so callers that do not care
about the fine-grained category can catch the standard type.
"""


class InvalidInputError(ValueError):
    """An argument is malformed (wrong shape, bad range, unknown option)."""


class InsufficientDataError(ValueError):
    """Too few samples for the requested statistic."""


class ClassTooSmallError(ValueError):
    """A label class has fewer samples than the estimator requires."""


class DegenerateDistributionError(ValueError):
    """The (sample or population) distribution carries no spread."""


class DegenerateFeatureError(ValueError):
    """A feature is constant and cannot be standardized or correlated."""


class InfeasibleConfigurationError(ValueError):
    """A sampling configuration cannot satisfy its constraints."""


class SmallClassWarning(UserWarning):
    """A class sits at the minimum size of two; estimates may be noisy."""

"""
Exception hierarchy for the herd testing analysis
"""


class HerdTestError(Exception):
    """Base class for every error raised by the analysis package"""


class DomainError(HerdTestError, ValueError):
    """An argument lies outside the domain of the operation"""


class InfeasibleMomentsError(DomainError):
    """No Beta prior has the requested mean and standard deviation"""


class CurveValidationError(DomainError):
    """A prevision curve is not non-decreasing in the horizon"""


class NoSolutionError(HerdTestError):
    """Every decision is infeasible at the requested satisficing level"""


class ConfigError(HerdTestError):
    """The run configuration file could not be read or validated"""

"""Exception hierarchy. The CLI maps each family to a distinct exit code."""


class BeamTrainError(Exception):
    """Base class for all package errors."""


class ConfigurationError(BeamTrainError, ValueError):
    """Invalid parameters, inconsistent dimensions or a malformed config."""


class ScheduleError(ConfigurationError):
    """Rotation index or TRN schedule parameters out of range."""


class NumericalError(BeamTrainError, ArithmeticError):
    """A computation could not produce a finite, meaningful result."""


class DegenerateObservationError(NumericalError):
    """All received training vectors are zero, so energy weights are undefined."""


class CombinerRankError(NumericalError):
    """The combiner noise covariance W W^H is singular."""

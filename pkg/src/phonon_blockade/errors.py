"""Exception hierarchy for the phonon-blockade toolkit."""


class PhononBlockadeError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensionError(PhononBlockadeError, ValueError):
    pass


class InvalidArgumentError(PhononBlockadeError, ValueError):
    pass


class ShapeMismatchError(PhononBlockadeError, ValueError):
    pass


class DispersiveSingularityError(PhononBlockadeError, ValueError):
    """Qubit and resonator are resonant (detuning is zero)."""


class DegenerateDriveError(PhononBlockadeError, ValueError):
    """Rabi frequency of the qubit drive is zero."""


class FrameMismatchError(PhononBlockadeError, ValueError):
    """The rotating frame requested does not match the probe frequency."""


class StiffnessError(PhononBlockadeError, RuntimeError):
    """The adaptive integrator could not advance past ``t``."""

    def __init__(self, message, t):
        super().__init__(f"{message} (t = {t!r})")
        self.t = t


class NoUniqueSteadyStateError(PhononBlockadeError, ValueError):
    pass


class DegeneracyError(PhononBlockadeError, RuntimeError):
    pass


class NumericalDegeneracyError(PhononBlockadeError, RuntimeError):
    pass


class AggregationError(PhononBlockadeError, ValueError):
    pass


class UnsupportedDistributionError(PhononBlockadeError, ValueError):
    pass


class StaleSteadyStateError(PhononBlockadeError, ValueError):
    pass


class TruncatedCorrelationError(PhononBlockadeError, ValueError):
    pass


class OverdampedError(PhononBlockadeError, ValueError):
    pass


class ConfigError(PhononBlockadeError, ValueError):
    pass

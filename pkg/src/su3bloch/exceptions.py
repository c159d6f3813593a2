"""Exception types raised by the engine."""


class InvalidArgumentError(ValueError):
    """An argument is outside the domain of the operation."""


class NormalizationError(InvalidArgumentError):
    """Amplitudes are not normalized and auto-normalization was not requested."""


class InvalidStateError(InvalidArgumentError):
    """A matrix that should be a density matrix is not Hermitian."""


class ConfigurationIncompleteError(InvalidArgumentError):
    """A lab-frame quantity was requested but the frequency fields are missing."""


class UnsupportedClosedFormError(InvalidArgumentError):
    """Closed-form constants only exist for real initial amplitudes."""

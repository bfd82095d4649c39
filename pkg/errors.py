"""Error types raised by the horizon services."""


class HorizonError(ValueError):
    """Base class for every domain error raised by the services."""


class OutOfRangeError(HorizonError):
    pass


class InvalidArgumentError(HorizonError):
    pass


class NotAStateError(HorizonError):
    """Raised when an operator has eigenvalues too negative to be a state."""


class DimensionMismatchError(HorizonError):
    pass


class ClosedFormDomainError(HorizonError):
    """Raised when a printed closed form is evaluated outside its domain."""


class UnsupportedStateError(HorizonError):
    pass


class ConfigError(HorizonError):
    pass

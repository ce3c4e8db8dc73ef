"""Exception hierarchy shared by all modules."""


class SworError(ValueError):
    """Base class for input and validation errors raised by this package."""


class TooShort(SworError):
    pass


class ZeroSumViolation(SworError):
    pass


class DegeneratePopulation(SworError):
    """Raised when an operation needs a population with nonzero absolute sum."""


class LengthMismatch(SworError):
    pass


class InvalidTransfer(SworError):
    pass


class TooLarge(SworError):
    """Raised when exact enumeration would exceed the subset budget."""


class NoPositiveMass(SworError):
    pass


class DomainError(SworError):
    pass

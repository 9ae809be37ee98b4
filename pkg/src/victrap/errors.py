"""Exception types shared across the package."""


class SimulationError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(SimulationError, ValueError):
    """A physical parameter or argument violates its documented range."""


class ContractViolationError(SimulationError):
    """An input broke a structural contract (e.g. a non-Hermitian state)."""


class PhysicalityError(SimulationError):
    """The evolving state left the physical region (trace or positivity)."""


class IntegrationError(SimulationError):
    """The stepper failed: step-size underflow or a non-finite state."""


class InsufficientDataError(SimulationError, ValueError):
    """A trajectory is too short for the requested analysis window."""


class ConfigError(SimulationError, ValueError):
    """A config file failed to parse or validate."""

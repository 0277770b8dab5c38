from typing import Dict, Optional, Any


class SimulationError(Exception):
    """Base class for every error raised by the simulator."""

    exit_code = 2


class InputError(SimulationError):
    """Bad parameters, configuration or usage."""

    exit_code = 1


class ParameterError(InputError):
    """One or more parameter invariants are violated."""

    def __init__(self, errors: Dict[str, str]):
        self.errors = dict(errors)
        details = "; ".join(f"{name}: {message}" for name, message in self.errors.items())
        super().__init__(f"Invalid parameters ({details})")

    def __reduce__(self):
        return self.__class__, (self.errors,)


class DomainError(InputError, ValueError):
    """Argument outside the domain of a formula."""
    pass


class ConfigError(InputError):
    """Configuration file related errors."""
    pass


class UsageError(InputError):
    """Command line usage errors."""
    pass


class ExportError(InputError):
    """Result file could not be written."""

    def __init__(self, path: Any, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"Cannot write {self.path}: {reason}")

    def __reduce__(self):
        return self.__class__, (self.path, self.reason)


class NumericalError(SimulationError):
    """Numerical failure inside the pipeline."""

    exit_code = 2


class StabilityError(NumericalError):
    """Drift matrix is not Hurwitz stable."""

    def __init__(self, message: str, verdict: Optional[Any] = None):
        self.verdict = verdict
        super().__init__(message)

    def __reduce__(self):
        return self.__class__, (str(self), self.verdict)


class PhysicalityError(NumericalError):
    """Covariance matrix violates the uncertainty principle."""
    pass


class DivergenceError(NumericalError):
    """Time integration of the covariance blew up."""
    pass


class ConsistencyError(NumericalError):
    """Internal consistency check failed."""
    pass


class SweepError(NumericalError):
    """Sweep produced no usable point."""
    pass

"""Exception hierarchy shared by every module of the package."""


class QAOAError(Exception):
    """Base class for all errors raised by qaoa_pf."""


class ParameterError(QAOAError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(QAOAError, ValueError):
    """The instance is too large for exact enumeration or simulation."""


class GenerationError(QAOAError, RuntimeError):
    """Random instance generation exhausted its retry budget."""


class DegenerateInstanceError(QAOAError, ValueError):
    """The instance has no edges, so the approximation ratio is undefined."""


class OptimizerError(QAOAError, FloatingPointError):
    """The objective returned a non-finite value during optimization."""

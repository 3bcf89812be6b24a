"""Exception hierarchy shared by all modules."""


class PPartError(Exception):
    """Base class; the CLI maps it to exit status 2."""


class ConfigurationError(PPartError):
    """Operands live over incompatible variable registries."""


class DomainError(PPartError, ValueError):
    """Input outside the mathematical domain of an operation."""


class InvalidPosetError(DomainError):
    pass


class ResourceError(PPartError):
    """A size guard or enumeration budget was exceeded."""


class InconsistencyError(PPartError):
    """A computed quantity contradicts a structural expectation
    (non-integer count, wrong pole order, ...)."""

"""Exception hierarchy shared across the package."""


class SymvalError(Exception):
    """Base class for all errors raised by symval."""


class ParseError(SymvalError):
    """Malformed input document; carries a human-readable location."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)


class NormalizationError(SymvalError):
    """Newform data violates the a_1 = 1 primitive normalization."""


class ConsistencyError(SymvalError):
    """Internally inconsistent input data (e.g. character modulus vs. level)."""


class ArityError(SymvalError):
    """Wrong number of generator values for a character modulus."""


class RangeError(SymvalError):
    """Request exceeds the stored coefficient range; .needed says how much."""

    def __init__(self, message, needed=None):
        self.needed = needed
        super().__init__(message)


class ResourceError(SymvalError):
    """Request exceeds the configured memory/length budget."""


class DomainError(SymvalError):
    """Argument outside the mathematical domain of the operation."""


class StateError(SymvalError):
    """Operation requires state (e.g. a resolved root number) that is absent."""


class IllDefinedCharacterError(SymvalError):
    """Hecke character data does not define a character (normalization fails)."""


class ResolutionError(SymvalError):
    """Numerical root-number resolution failed a cross-probe consistency check."""


class ConfigError(SymvalError):
    """Bad configuration file or invalid configuration value."""


class InternalConsistencyError(SymvalError):
    """A cross-check that must hold by construction failed; indicates a defect."""

"""Exception hierarchy shared by all modules."""


class GroverianError(Exception):
    """Base class for errors raised by this package."""


class DomainError(GroverianError, ValueError):
    """An argument lies outside an operation's domain (bad index, dimension, non-real input)."""


class UnsupportedSizeError(GroverianError, ValueError):
    """The qubit count is outside the range an operation supports."""


class ConfigurationError(GroverianError, ValueError):
    """Invalid solver or command configuration."""


class StateFileError(GroverianError):
    """A state file could not be read or parsed."""

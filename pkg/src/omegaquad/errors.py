"""Exception hierarchy shared by the library and the command line."""


class OmegaQuadError(Exception):
    """Base class for every error raised by this package."""


class DomainError(OmegaQuadError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceError(OmegaQuadError):
    """A table or enumeration would exceed its configured size cap."""


class ConfigurationError(OmegaQuadError, ValueError):
    """Inconsistent run configuration (bounds, chunking, ...)."""


class JournalError(OmegaQuadError):
    """A scan journal could not be written or read back."""


class InvariantViolation(OmegaQuadError, AssertionError):
    """A computation contradicted a result that is known to hold."""

"""Exception hierarchy shared by every module."""


class FFHyperError(Exception):
    """Base class for library errors."""


class DomainError(FFHyperError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class FieldMismatchError(DomainError):
    """Objects tied to different finite fields were combined."""


class CapacityError(FFHyperError):
    """A requested table or enumeration exceeds the configured size limit."""


class CacheError(FFHyperError):
    """A field cache file is unreadable, corrupt or has the wrong version."""

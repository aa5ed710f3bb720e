"""Exception hierarchy shared by every module of the package."""


class ProfileGenError(Exception):
    """Base class for all package errors."""


class InvalidGenerator(ProfileGenError, ValueError):
    """A generator violates one of its structural constraints."""

    def __init__(self, message, constraint=None):
        super().__init__(message)
        self.constraint = constraint


class CapExceeded(ProfileGenError):
    """In-memory evaluation would exceed the configured size cap."""


class DedupCapExceeded(ProfileGenError):
    """Overlapping criteria force a dedup pass larger than the row cap."""


class OverlappingCriteria(ProfileGenError):
    """An operation needs pairwise-disjoint criterion domains."""


class EmptyMatrix(ProfileGenError, ValueError):
    pass


class Unsatisfiable(ProfileGenError):
    """No profile of a generator contains the requested symptoms."""


class G3NotReducible(ProfileGenError):
    pass


class OracleTooLarge(ProfileGenError):
    pass


class TableMismatch(ProfileGenError, ValueError):
    """Profiles built over different symbol tables were combined."""

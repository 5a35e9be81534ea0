"""Exception types shared across the package."""


class FactGraphError(Exception):
    """Base class for all package errors."""


class ValidationError(FactGraphError):
    """An input or constructed object violates a structural invariant."""


class ParseError(FactGraphError):
    """A textual group or presentation specification could not be parsed."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CapExceeded(FactGraphError):
    """A configured size cap was exceeded (closure, order, or lattice size)."""


class EnumerationCapped(CapExceeded):
    """Coset enumeration ran out of cosets before completing.

    The presentation may define a larger (or infinite) group than expected;
    retry with a higher ``max_cosets`` if a finite group is intended.
    """


class CertificateError(FactGraphError):
    """An internal consistency certificate failed; this indicates a bug."""

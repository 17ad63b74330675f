"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""


class DimensionError(PreconditionError):
    """Matrix shapes do not fit the requested operation."""


class ParseError(PreconditionError):
    """A text payload could not be parsed."""


class ResourceGuardError(RuntimeError):
    """A configured search limit was exceeded before an answer was reached."""

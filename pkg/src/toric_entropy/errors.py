"""Exception hierarchy shared by the library and the command-line front end."""


class ToricEntropyError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(ToricEntropyError, ValueError):
    """A caller passed an argument outside the operation's domain."""


class ValidationError(ToricEntropyError, ValueError):
    """A surface document or state violates a structural invariant."""


class ResourceLimitError(ToricEntropyError, RuntimeError):
    """An exponential-cost computation would exceed its configured limit."""


class UnsupportedOperationError(ToricEntropyError, NotImplementedError):
    """The operation is not defined for this kind of surface."""


class StructuralError(ToricEntropyError, RuntimeError):
    """A computed object lacks structure that the model guarantees."""

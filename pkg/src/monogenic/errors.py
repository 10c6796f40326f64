"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in Clifford algebras of different dimension."""


class InvariantViolationError(RuntimeError):
    """A structural invariant failed (e.g. a non-monotone growth scale)."""


class UndefinedOrderError(ValueError):
    """Growth estimation was asked for on an empty or all-zero window."""


class SerializationError(ValueError):
    """A file does not conform to the interchange format."""

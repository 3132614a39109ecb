"""Exception hierarchy shared by all modules."""


class AmenabilityError(Exception):
    """Base class for all errors raised by this package."""


class InvalidFieldError(AmenabilityError):
    """Characteristic is neither 0 nor a machine-word prime."""


class ShapeError(AmenabilityError):
    """Row lengths, label counts, or argument types do not line up."""


class FieldMismatchError(AmenabilityError):
    """Two operands live over different fields."""


class DomainError(AmenabilityError):
    """A point, label, generator, or word is not part of the stated universe."""


class CapacityError(AmenabilityError):
    """The requested computation exceeds an explicit enumeration cap."""


class ContainmentError(AmenabilityError):
    """An operation required E <= F but the containment does not hold."""


class InvalidBasisError(AmenabilityError):
    """A label set claimed to be a basis fails the independence check."""


class DegenerateInputError(AmenabilityError):
    """Empty set, zero subspace, or zero function where positivity is required."""


class InternalInvariantError(AmenabilityError):
    """A mathematically guaranteed postcondition failed; indicates a bug."""

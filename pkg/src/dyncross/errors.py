"""Exception hierarchy shared by all modules."""


class DyncrossError(Exception):
    """Base class for all library errors."""


class ValidationError(DyncrossError):
    """A system or input document violates a structural invariant."""


class EmptySystem(ValidationError):
    """The point set is empty."""


class RelativeSetTooSmall(ValidationError):
    """Y together with the image of the map does not cover the point set."""


class DanglingReference(ValidationError):
    """A map value or subset member is not a point of the system."""


class NotAYPair(DyncrossError):
    """The given pair (V, V') fails the Y-pair conditions."""


class SpecialCaseViolated(DyncrossError):
    """The special ideal route requires V' = V ∩ Y."""


class MissingMatrix(DyncrossError):
    """A domain point has no K0 matrix attached."""


class RouteMismatch(DyncrossError):
    """The two independent ideal K-theory routes disagree."""


class TransferMismatch(DyncrossError):
    """Freeness of the base system and of its extension disagree."""


class OutsideDomain(DyncrossError):
    """The map was applied at a point outside its domain."""


class ParseError(DyncrossError):
    """An input document is malformed."""

"""Exception hierarchy shared by every module of the package."""


class FoldIdealsError(Exception):
    """Base class for all errors raised by foldideals."""


class FieldError(FoldIdealsError, ValueError):
    """Invalid field description or a value that does not live in the field."""


class InputError(FoldIdealsError, ValueError):
    """Malformed forms, documents or arguments."""


class RankError(FoldIdealsError, ValueError):
    """The collection does not have the rank an operation requires."""


class DegreeRangeError(FoldIdealsError, ValueError):
    """A fold degree or shift parameter lies outside its admissible range."""


class TooLargeError(FoldIdealsError):
    """The instance exceeds a hard desk-scale cap."""


class NeedsFiniteFieldError(FoldIdealsError):
    """The computation cannot be carried out by enumeration over the rationals."""


class StabilizationError(FoldIdealsError, RuntimeError):
    """An iterated colon failed to stabilize within the allowed number of steps."""

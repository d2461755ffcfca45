"""Exception hierarchy shared by all modules."""


class KineticError(Exception):
    """Base class for every error raised by this package."""


class DegenerateMotion(KineticError):
    """An event polynomial vanishes identically (the tuple is degenerate at all times)."""


class CollinearBase(KineticError):
    """The three base points of an in-circle test are collinear."""


class CoincidentPoints(KineticError):
    """Two points occupy the same position."""


class DegenerateAtStart(KineticError):
    """The instance violates general position at the construction time."""

    def __init__(self, message, tuple_=None):
        super().__init__(message)
        self.tuple = tuple_


class InstanceDegenerate(KineticError):
    """The instance has a degenerate tuple (identically co-circular or collinear)."""


class GeneralPositionViolation(KineticError):
    """An event is tangential (even multiplicity) or otherwise non-generic."""


class TieDetected(KineticError):
    """Two distinct events occur at the same certified time."""

    def __init__(self, message, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second


class ValidationFailure(KineticError):
    """The kinetic structure failed an internal consistency check."""


class PreconditionViolated(KineticError):
    """An operation was called outside its documented domain."""


class GenerationExhausted(KineticError):
    """Instance generation could not find a non-degenerate sample."""

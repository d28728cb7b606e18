"""Exception hierarchy shared by every module of the package."""


class ClosureError(Exception):
    """Base class for all errors raised by closurehom."""


class InvalidPointError(ClosureError, ValueError):
    """A point id (or label) does not belong to the space."""


class InvalidSpaceError(ClosureError, ValueError):
    """A closure space or a map between spaces is malformed."""


class InvalidSizeError(InvalidSpaceError):
    """A family constructor received a size it cannot build."""


class MismatchError(ClosureError, ValueError):
    """Two objects that must share a point set or domain do not."""


class NotACoverError(ClosureError, ValueError):
    """The sets of a cover do not exhaust the space."""


class DiscontinuousMapError(ClosureError, ValueError):
    """A construction needed a continuous map and got one that is not."""


class UnsupportedDirectedError(ClosureError, ValueError):
    """Homology was requested for a closure that is not symmetric."""


class BudgetExceededError(ClosureError, RuntimeError):
    """The simplex budget ran out before the requested degrees were covered."""


class HypothesisError(ClosureError, ValueError):
    """A precondition of an exactness check (cover, small simplices) fails."""


class HomotopyInvarianceError(ClosureError, AssertionError):
    """A certified deformation retraction changed flag-complex homology.

    This signals an internal inconsistency and should never be raised on
    correct input.
    """

"""Exception types shared across the package."""


class OctantColorError(Exception):
    """Base class for all library errors."""


class DegenerateInput(OctantColorError):
    """A point set violates the general-position requirement."""


class NotIndependent(OctantColorError):
    """A point set contains a dominating pair where independence is required."""


class TargetNotMet(OctantColorError):
    """The base 2-colorer exhausted its search without certifying the target.

    Carries the best coloring found so that callers can inspect or reuse it.
    """

    def __init__(self, message, best_coloring=None, achieved_c=None):
        super().__init__(message)
        self.best_coloring = best_coloring
        self.achieved_c = achieved_c


class EmptyHomothet(OctantColorError):
    """Triangle parameters describe an empty region (a + b + c < 0)."""


class InfiniteApex(OctantColorError):
    """An operation requiring finite apices received an infinite coordinate."""


class IllegalAssignment(OctantColorError):
    """A game algorithm recolored an interval or colored an unknown one."""


class InternalError(OctantColorError):
    """A library self-check failed; indicates a bug, not bad input."""


class StrategyInternalError(InternalError):
    """An adversary self-invariant failed; indicates a bug, not a game loss."""

"""Exception hierarchy shared by every module."""


class HypercolorError(Exception):
    """Base class for all errors raised by this package."""


class InvalidHypergraph(HypercolorError, ValueError):
    """The edge list violates a standing hypergraph assumption."""


class EdgeTooSmall(InvalidHypergraph):
    pass


class VertexOutOfRange(InvalidHypergraph):
    pass


class DuplicateEdge(InvalidHypergraph):
    pass


class ContainedEdge(InvalidHypergraph):
    pass


class InvalidAssignment(HypercolorError, ValueError):
    pass


class BudgetExceeded(HypercolorError):
    """An exhaustive enumeration would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: enumeration size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class RhoUndefined(HypercolorError):
    pass


class GammaUndefined(HypercolorError):
    pass


class NonUniform(HypercolorError):
    pass


class WrongRegime(HypercolorError):
    """Inputs fall outside the range in which a statement applies."""


class DomainError(HypercolorError, ValueError):
    pass


class PreconditionViolated(HypercolorError, ValueError):
    pass

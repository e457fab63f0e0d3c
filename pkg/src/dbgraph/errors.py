"""Exception hierarchy shared by every module of the package."""


class GraphError(Exception):
    """Base class for all errors raised by dbgraph."""


class IndexOutOfRange(GraphError, IndexError):
    pass


class SelfLoop(GraphError, ValueError):
    pass


class SameVertex(GraphError, ValueError):
    pass


class MalformedRecord(GraphError, ValueError):
    pass


class UnsupportedOrder(GraphError, ValueError):
    pass


class NotConnected(GraphError, ValueError):
    pass


class NotBipartite(GraphError, ValueError):
    pass


class Is3Connected(GraphError, ValueError):
    """The graph has no 2-cut, so there is nothing to decompose."""


class StructureViolation(GraphError):
    """A layer or edge-class invariant failed.

    Raised when the input lies outside the hypotheses under which the
    decomposition is well defined (for example a non-balanced graph whose
    bad component straddles the cut).
    """


class SpecOutOfRange(GraphError, ValueError):
    pass


class OrderTooLarge(GraphError, ValueError):
    pass

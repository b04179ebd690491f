"""Exception hierarchy shared by all modules."""


class PathHomologyError(Exception):
    """Base class for every error raised by this package."""


class GraphError(PathHomologyError, ValueError):
    """Invalid graph structure."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class NotAPartition(GraphError):
    """Layers overlap, miss a vertex, or contain an empty layer."""


class EdgeSkipsLayer(GraphError):
    """An edge does not go from some layer K_i to K_{i+1}."""


class NotStratifiable(GraphError):
    pass


class CycleDetected(GraphError):
    pass


class DepthZero(GraphError):
    """The graph has no edges, so there is no longest-path subgraph."""


class MissingWeights(PathHomologyError, ValueError):
    pass


class DisallowedTerm(PathHomologyError, ValueError):
    pass


class UnknownLabel(PathHomologyError, KeyError):
    pass


class Inconsistent(PathHomologyError, ArithmeticError):
    """A linear system ``a @ x = b`` has no solution."""


class DimensionGuard(PathHomologyError, RuntimeError):
    """The general algorithm would enumerate too many allowed paths."""


class BadRho(PathHomologyError, ValueError):
    pass

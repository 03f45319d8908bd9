"""Exception types shared across the toolkit."""


class ConvexPartError(Exception):
    """Base class for all toolkit errors."""


class DegenerateHull(ConvexPartError):
    """Fewer than three points, or all points collinear."""


class BadIndex(ConvexPartError):
    """An edge references a vertex index outside 0..n-1, or a self-loop."""


class DuplicateEdge(ConvexPartError):
    """The same unordered vertex pair appears twice in an edge set."""


class PointOnEdge(ConvexPartError):
    """An input point lies in the relative interior of an edge.

    ``hits`` holds (point_index, edge_index) pairs.
    """

    def __init__(self, msg, hits=()):
        super().__init__(msg)
        self.hits = list(hits)


class CrossingEdges(ConvexPartError):
    """Two edges properly cross. ``pairs`` holds (edge_index, edge_index)."""

    def __init__(self, msg, pairs=()):
        super().__init__(msg)
        self.pairs = list(pairs)


class UnknownEdge(ConvexPartError):
    """The requested edge is not present in the subdivision."""


class NotRemovable(ConvexPartError):
    """Edge removal was attempted without a Removable merge preview."""


class InfeasibleSolution(ConvexPartError):
    """Scoring was requested for a solution that fails verification.

    ``report`` carries the FeasibilityReport with the violations.
    """

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class TooDense(ConvexPartError):
    """A generator was asked for more distinct points than the lattice holds."""


class EmptyMap(ConvexPartError):
    """A density map has no positive weight."""


class TooLarge(ConvexPartError):
    """Instance exceeds the exact solver's size limit."""


class ParseError(ConvexPartError):
    """A file could not be parsed at all (malformed JSON / graymap)."""


class SchemaError(ConvexPartError):
    """A file parsed but violates the instance/solution schema."""


class NameMismatch(ConvexPartError):
    """A solution names an instance other than the one supplied."""

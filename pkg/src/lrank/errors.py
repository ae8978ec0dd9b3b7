"""Exception hierarchy shared across the package."""

from __future__ import annotations


class RankingError(Exception):
    """Base class for every error raised by lrank."""


class GraphError(RankingError):
    pass


class EmptyRoots(GraphError):
    pass


class UnreachableVertex(GraphError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is not reachable from the root set")
        self.vertex = vertex


class UnknownVertex(GraphError):
    def __init__(self, vertex):
        super().__init__(f"unknown vertex {vertex!r}")
        self.vertex = vertex


class EmptyFactor(GraphError):
    pass


class DecompositionError(RankingError):
    pass


class InvalidDecomposition(DecompositionError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class VertexNotInDecomposition(DecompositionError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} occurs in no bag")
        self.vertex = vertex


class LayerOutOfRange(DecompositionError):
    pass


class TooSmall(DecompositionError):
    pass


class NotEdgeMaximal(DecompositionError):
    pass


class UncoloredVertex(RankingError):
    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} has no colour")
        self.vertex = vertex


class InstanceTooLarge(RankingError):
    pass


class BudgetExceeded(RankingError):
    """Exact search ran out of nodes; ``lower`` and ``upper`` bound chi."""

    def __init__(self, lower: int, upper: int | None, nodes: int):
        super().__init__(
            f"search budget exhausted after {nodes} nodes (chi in [{lower}, {upper}])"
        )
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


class VerificationFailed(RankingError):
    def __init__(self, violation, message: str = "colouring is not a valid ranking"):
        super().__init__(f"{message}: witness path {list(violation.witness_path)}")
        self.violation = violation


class BandCollision(RankingError):
    pass


class BandOverflow(RankingError):
    """A colour band ran out of room for the current value of ``a``."""

    def __init__(self, where: str, needed: float, available: float):
        super().__init__(f"band overflow in {where}: need {needed}, have {available}")
        self.where = where
        self.needed = needed
        self.available = available


class MismatchedEll(RankingError):
    pass


class InvalidCertificate(RankingError):
    def __init__(self, edge, message: str = "target edge is not a product edge"):
        super().__init__(f"{message}: {edge}")
        self.edge = edge


class TooLarge(RankingError):
    def __init__(self, predicted: int, budget: int):
        super().__init__(f"construction would have {predicted} vertices (budget {budget})")
        self.predicted = predicted
        self.budget = budget


class DomainError(RankingError, ValueError):
    pass


class FormatError(RankingError, ValueError):
    pass

"""Exception hierarchy shared by every qcube module."""

from __future__ import annotations


class QCubeError(Exception):
    """Base class for all errors raised by qcube."""


class GraphParseError(QCubeError):
    """Edge-list text could not be turned into a graph."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(GraphParseError):
    pass


class SelfLoop(GraphParseError):
    pass


class EmptyGraph(GraphParseError):
    pass


class Disconnected(QCubeError):
    def __init__(self, representatives: list[str]):
        self.representatives = representatives
        super().__init__(
            "graph is disconnected; one vertex per component: " + ", ".join(representatives)
        )


class NotBipartite(QCubeError):
    pass


class NotAdjacent(QCubeError):
    pass


class UnknownVertex(QCubeError):
    pass


class NoConvergence(QCubeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"eigensolver did not converge after {iterations} sweeps (residual {residual:.3e})")


class OutOfRange(QCubeError):
    pass


class OrderCapExceeded(QCubeError):
    pass


class InvalidQuintuple(QCubeError):
    pass


class InternalInconsistency(QCubeError):
    """Two routes that must agree disagreed, which points to an implementation or tolerance bug."""

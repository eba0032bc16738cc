"""Positive semidefiniteness of graph Q-matrices and hypercube embeddings."""

__version__ = "0.1.0"

from .analysis import AnalysisReport, verify_equivalences
from .errors import QCubeError
from .graph import DistanceMatrix, Graph, bfs_distances, is_bipartite, is_distance_regular, parse_graph
from .partial_cube import djokovic_embedding, find_quintuple, verify_embedding
from .qmatrix import build_q, estimate_pi, pi_contains, qec

__all__ = [
    "AnalysisReport",
    "DistanceMatrix",
    "Graph",
    "QCubeError",
    "bfs_distances",
    "build_q",
    "djokovic_embedding",
    "estimate_pi",
    "find_quintuple",
    "is_bipartite",
    "is_distance_regular",
    "parse_graph",
    "pi_contains",
    "qec",
    "verify_embedding",
    "verify_equivalences",
]

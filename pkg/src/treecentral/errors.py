"""Exception types raised across the package."""


class TreeValidationError(ValueError):
    """Edge list or adjacency data does not describe a tree on 1..n."""


class PreconditionError(ValueError):
    """Arguments violate the hypotheses an operation requires."""


class InvariantError(RuntimeError):
    """An internal structural guarantee failed (e.g. a central set with 3 vertices)."""


class SolverError(RuntimeError):
    """An iterative numerical routine hit its iteration cap."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class PerronTieError(RuntimeError):
    """Two non-isomorphic components have Perron values that cannot be separated."""

    def __init__(self, message: str, vertex: int, candidates: list):
        super().__init__(message)
        self.vertex = vertex
        self.candidates = candidates


class CharacteristicSetMismatch(RuntimeError):
    """The Fiedler-vector and Perron-component routes disagree on a tree."""

    def __init__(self, message: str, fiedler, perron):
        super().__init__(message)
        self.fiedler = fiedler
        self.perron = perron


class EnumerationCapError(ValueError):
    """Requested vertex count is above the enumeration cap."""


class AmbiguousFiedlerError(RuntimeError):
    """Fiedler-vector sign pattern does not single out one vertex or one edge."""

    def __init__(self, message: str, vertices: list, edges: list):
        super().__init__(message)
        self.vertices = vertices
        self.edges = edges

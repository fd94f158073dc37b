"""Exceptions raised by mesh construction, calculus and estimators."""
from typing import Optional


class MeshError(ValueError):

    """Invalid mesh topology or geometry."""


class IndexOutOfRange(MeshError, IndexError):

    """A face references a vertex index that does not exist."""

    def __init__(self, message: str, index: int, line: Optional[int] = None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.index = index
        self.line = line


class DegenerateFace(MeshError):

    """A face has (numerically) zero area."""

    def __init__(self, message: str, face: int):
        super().__init__(message)
        self.face = face


class DuplicateVertexInFace(MeshError):

    """A face references the same vertex more than once."""

    def __init__(self, message: str, face: int):
        super().__init__(message)
        self.face = face


class EmptyMesh(MeshError):

    """A mesh without vertices or faces."""


class IsolatedVertex(MeshError):

    """A vertex that is not contained in any face."""

    def __init__(self, message: str, vertex: int):
        super().__init__(message)
        self.vertex = vertex


class ZeroNormalSum(MeshError):

    """The weighted face normals around a vertex cancel out."""

    def __init__(self, message: str, vertex: int):
        super().__init__(message)
        self.vertex = vertex


class MeshSyntaxError(ValueError):

    """Malformed mesh file content.

    The 1-based number of the offending line is available as `line` and is
    part of the message.

    """

    def __init__(self, message: str, line: int):
        super().__init__(f'line {line}: {message}')
        self.line = line


class NonTriangleFace(MeshSyntaxError):

    """A face with other than three vertices."""


class CountMismatch(MeshSyntaxError):

    """Element counts in a header disagree with the file body."""


class PointOutsideFace(ValueError):

    """A query point lies outside the triangle it was evaluated on."""


class NonUnitNormal(ValueError):

    """A normal vector that does not have unit length."""


class SingularGramMatrix(ArithmeticError):

    """The Gram matrix of a face's edge vectors cannot be inverted."""

    def __init__(self, message: str, face: int):
        super().__init__(message)
        self.face = face


class DegenerateProjection(ArithmeticError):

    """A neighbor projects onto the vertex in the tangent plane."""

    def __init__(self, message: str, vertex: int, neighbor: int):
        super().__init__(message)
        self.vertex = vertex
        self.neighbor = neighbor


class TooFewNeighbors(ValueError):

    """Not enough neighbor samples to determine a curvature tensor."""

    def __init__(self, message: str, count: int, vertex: Optional[int] = None):
        super().__init__(message)
        self.count = count
        self.vertex = vertex


class RankDeficientFit(ArithmeticError):

    """The least squares system of a normal curvature fit is ill-posed."""

    def __init__(self, message: str, condition_number: float):
        super().__init__(message)
        self.condition_number = condition_number


class RetryExhausted(RuntimeError):

    """Random sampling did not produce a valid draw in time."""

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts

"""Piecewise-linear calculus on triangle meshes.

Functions given by their values at the vertices are extended linearly over
each face. Their gradients are constant per face and are averaged to the
vertices with centroid weights, which are also used to define vertex
normals.

"""
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from meshcurv.errors import (
    IsolatedVertex,
    PointOutsideFace,
    SingularGramMatrix,
    ZeroNormalSum,
)
from meshcurv.mesh import TriMesh


logger = logging.getLogger(__name__)


BARYCENTRIC_TOLERANCE = 1e-10
"""Barycentric coordinates down to this negative value count as inside."""

NORMAL_SUM_TOLERANCE = 1e-12
"""Weighted normal sums shorter than this are considered to cancel."""


class VertexFunction(object):

    """Scalar function given by its value at each vertex of a mesh."""

    def __init__(
        self,
        mesh: TriMesh,
        values: Union[np.ndarray, Sequence[float]]
    ) -> None:
        """
        Parameters
        ----------
        mesh: meshcurv.mesh.TriMesh
            Mesh on whose vertices the function is defined
        values: Union[numpy.ndarray, Sequence[float]]
            One finite value per vertex

        Raises
        ------
        ValueError
            When the number of values does not match the number of vertices
            or when a value is not finite.

        """
        array = np.array(values, dtype=np.float64)
        if array.ndim != 1 or array.shape[0] != mesh.n_vertices:
            raise ValueError(
                'Argument "values" must contain one value per vertex: '
                f'expected {mesh.n_vertices}, got {array.size}.'
            )
        if not np.all(np.isfinite(array)):
            raise ValueError('Argument "values" must be finite.')
        array.flags.writeable = False
        self._values = array

    def __len__(self) -> int:
        return self._values.shape[0]

    def __getitem__(self, vertex: int) -> float:
        return float(self._values[vertex])

    @property
    def values(self) -> np.ndarray:
        """numpy.ndarray: read-only value of the function at each vertex"""
        return self._values


@dataclass(frozen=True)
class CentroidWeights:

    """Normalized centroid weights of the faces incident to a vertex.

    Attributes
    ----------
    vertex: int
        Index of the vertex
    faces: Tuple[int, ...]
        Indices of the incident faces
    weights: numpy.ndarray
        Weight of each face in `faces`, summing to one

    """

    vertex: int
    faces: Tuple[int, ...]
    weights: np.ndarray


def _function_values(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]]
) -> np.ndarray:
    if isinstance(g, VertexFunction):
        if len(g) != mesh.n_vertices:
            raise ValueError(
                'Argument "g" must be defined on the vertices of the mesh.'
            )
        return g.values
    return VertexFunction(mesh, g).values


def _check_face(mesh: TriMesh, face: int) -> int:
    if not 0 <= face < mesh.n_faces:
        raise IndexError(
            f'Argument "face" must be in range [0, {mesh.n_faces}), '
            f'got {face}.'
        )
    return int(face)


def _rotated_face(mesh: TriMesh, face: int, at: int) -> Tuple[int, int, int]:
    """Returns the vertices of `face` starting at `at` in winding order."""
    i, j, k = (int(x) for x in mesh.faces[face])
    if at == i:
        return (i, j, k)
    if at == j:
        return (j, k, i)
    if at == k:
        return (k, i, j)
    raise ValueError(
        f'Argument "at" must be a vertex of face #{face}, got {at}.'
    )


def _gram_system(
    mesh: TriMesh,
    face: int,
    corners: Tuple[int, int, int]
) -> Tuple[np.ndarray, np.ndarray]:
    """Returns the edge vectors of a face and the inverse of their Gram
    matrix.

    """
    i, j, k = corners
    points = mesh.vertices
    edges = np.stack([points[j] - points[i], points[k] - points[i]])
    gram = edges @ edges.T
    determinant = gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]
    if not determinant >= mesh.area_tolerance ** 2:
        raise SingularGramMatrix(
            f'Gram matrix of face #{face} is singular '
            f'(determinant {determinant!r}).',
            face=face
        )
    inverse = np.array([
        [gram[1, 1], -gram[0, 1]],
        [-gram[1, 0], gram[0, 0]],
    ]) / determinant
    return edges, inverse


def _solve_face_gradient(
    mesh: TriMesh,
    face: int,
    at: int,
    values: np.ndarray
) -> np.ndarray:
    """Computes the gradient of one or several vertex fields on a face.

    `values` has the vertex axis first; the result has shape ``(3, ...)``
    with one column per trailing component.

    """
    corners = _rotated_face(mesh, face, at)
    edges, inverse = _gram_system(mesh, face, corners)
    i, j, k = corners
    differences = np.stack([values[j] - values[i], values[k] - values[i]])
    coefficients = np.tensordot(inverse, differences, axes=1)
    return np.tensordot(edges.T, coefficients, axes=1)


def evaluate_pl(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]],
    face: int,
    point: Sequence[float]
) -> float:
    """Evaluates the piecewise-linear extension of a vertex function.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    g: Union[meshcurv.calculus.VertexFunction, numpy.ndarray, Sequence[float]]
        Function values at the vertices
    face: int
        Index of the face that contains `point`
    point: Sequence[float]
        Point in the face. Points off the face plane are projected onto it.

    Returns
    -------
    float
        ``alpha g(v_i) + beta g(v_j) + gamma g(v_k)`` where ``(alpha, beta,
        gamma)`` are the barycentric coordinates of `point`

    Raises
    ------
    IndexError
        When `face` is out of range.
    meshcurv.errors.PointOutsideFace
        When a barycentric coordinate is below ``-1e-10``.

    Examples
    --------
    >>> from meshcurv.mesh import TriMesh
    >>> from meshcurv.calculus import evaluate_pl
    >>> mesh = TriMesh([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 1, 2)])
    >>> evaluate_pl(mesh, [0.0, 3.0, 6.0], 0, (1 / 3, 1 / 3, 0))
    3.0

    """
    values = _function_values(mesh, g)
    face = _check_face(mesh, face)
    corners = _rotated_face(mesh, face, int(mesh.faces[face, 0]))
    edges, inverse = _gram_system(mesh, face, corners)
    offset = np.asarray(point, dtype=np.float64) - mesh.vertices[corners[0]]
    beta, gamma = inverse @ (edges @ offset)
    alpha = 1.0 - beta - gamma
    coordinates = np.array([alpha, beta, gamma])
    if np.any(coordinates < -BARYCENTRIC_TOLERANCE):
        raise PointOutsideFace(
            f'Point {tuple(offset + mesh.vertices[corners[0]])} lies outside '
            f'face #{face} (barycentric coordinates {tuple(coordinates)}).'
        )
    return float(coordinates @ values[list(corners)])


def face_gradient(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]],
    face: int,
    at: int
) -> np.ndarray:
    """Computes the gradient of the piecewise-linear extension on a face.

    With ``e1 = v_j - v_i`` and ``e2 = v_k - v_i`` for ``v_i = at``, the
    gradient is ``a e1 + b e2`` where ``(a, b)`` solves the 2 x 2 system
    given by the Gram matrix of ``(e1, e2)`` and the differences
    ``g(v_j) - g(v_i)`` and ``g(v_k) - g(v_i)``.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    g: Union[meshcurv.calculus.VertexFunction, numpy.ndarray, Sequence[float]]
        Function values at the vertices
    face: int
        Face index
    at: int
        Vertex of `face` at which the gradient is evaluated

    Returns
    -------
    numpy.ndarray
        Gradient vector lying in the plane of the face

    Raises
    ------
    IndexError
        When `face` is out of range.
    ValueError
        When `at` is not a vertex of `face`.
    meshcurv.errors.SingularGramMatrix
        When the face is degenerate.

    """
    values = _function_values(mesh, g)
    face = _check_face(mesh, face)
    return _solve_face_gradient(mesh, face, int(at), values)


def face_gradients(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]]
) -> np.ndarray:
    """Computes the gradient of a vertex function on every face.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    g: Union[meshcurv.calculus.VertexFunction, numpy.ndarray, Sequence[float]]
        Function values at the vertices

    Returns
    -------
    numpy.ndarray
        Gradients with shape ``(n_F, 3)``

    """
    values = _function_values(mesh, g)
    faces = mesh.faces
    points = mesh.vertices
    e1 = points[faces[:, 1]] - points[faces[:, 0]]
    e2 = points[faces[:, 2]] - points[faces[:, 0]]
    g11 = np.einsum('ij,ij->i', e1, e1)
    g12 = np.einsum('ij,ij->i', e1, e2)
    g22 = np.einsum('ij,ij->i', e2, e2)
    determinant = g11 * g22 - g12 ** 2
    singular = np.nonzero(~(determinant >= mesh.area_tolerance ** 2))[0]
    if len(singular) > 0:
        f = int(singular[0])
        raise SingularGramMatrix(
            f'Gram matrix of face #{f} is singular '
            f'(determinant {determinant[f]!r}).',
            face=f
        )
    d1 = values[faces[:, 1]] - values[faces[:, 0]]
    d2 = values[faces[:, 2]] - values[faces[:, 0]]
    a = (g22 * d1 - g12 * d2) / determinant
    b = (g11 * d2 - g12 * d1) / determinant
    return a[:, np.newaxis] * e1 + b[:, np.newaxis] * e2


def centroid_weights(mesh: TriMesh, vertex: int) -> CentroidWeights:
    """Computes the centroid weights of the faces incident to a vertex.

    The weight of face `f` is proportional to ``1 / ||G_f - v||^2`` where
    ``G_f`` is the centroid of the face.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index

    Returns
    -------
    meshcurv.calculus.CentroidWeights
        Incident faces and their weights, normalized to sum to one

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.

    """
    faces = mesh.incident_faces(vertex)
    if len(faces) == 0:
        raise IsolatedVertex(
            f'Vertex {vertex} is not contained in any face.',
            vertex=vertex
        )
    offsets = mesh.face_centroids[list(faces)] - mesh.vertices[vertex]
    squared_distances = np.einsum('ij,ij->i', offsets, offsets)
    assert np.all(squared_distances > 0.0)
    inverse = 1.0 / squared_distances
    weights = inverse / np.sum(inverse)
    weights.flags.writeable = False
    return CentroidWeights(
        vertex=int(vertex),
        faces=tuple(faces),
        weights=weights
    )


def corner_centroid_weights(mesh: TriMesh) -> np.ndarray:
    """Computes the centroid weights of all faces for all of their corners.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh

    Returns
    -------
    numpy.ndarray
        Array of shape ``(n_F, 3)`` where entry ``[f, c]`` is the weight of
        face `f` for its corner vertex ``mesh.faces[f, c]``. The weights of
        the faces around each vertex sum to one.

    """
    faces = mesh.faces
    offsets = (
        mesh.face_centroids[:, np.newaxis, :] - mesh.vertices[faces]
    )
    inverse = 1.0 / np.einsum('ijk,ijk->ij', offsets, offsets)
    totals = np.zeros(mesh.n_vertices)
    np.add.at(totals, faces, inverse)
    return inverse / totals[faces]


def _weighted_vertex_sum(mesh: TriMesh, face_values: np.ndarray) -> np.ndarray:
    """Accumulates per-face vectors at the vertices with centroid weights.

    Isolated vertices get ``nan`` rows.

    """
    weights = corner_centroid_weights(mesh)
    contributions = weights[:, :, np.newaxis] * face_values[:, np.newaxis, :]
    totals = np.zeros((mesh.n_vertices, face_values.shape[1]))
    np.add.at(
        totals,
        mesh.faces.reshape(-1),
        contributions.reshape(-1, face_values.shape[1])
    )
    counts = np.bincount(mesh.faces.reshape(-1), minlength=mesh.n_vertices)
    totals[counts == 0] = np.nan
    return totals


def vertex_gradient(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]],
    vertex: int
) -> np.ndarray:
    """Computes the gradient of a vertex function at a vertex.

    The face gradients of the incident faces are combined with the centroid
    weights of the vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    g: Union[meshcurv.calculus.VertexFunction, numpy.ndarray, Sequence[float]]
        Function values at the vertices
    vertex: int
        Vertex index

    Returns
    -------
    numpy.ndarray
        Gradient vector

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.
    meshcurv.errors.SingularGramMatrix
        When an incident face is degenerate.

    """
    values = _function_values(mesh, g)
    return weighted_gradient(mesh, values, vertex)


def weighted_gradient(
    mesh: TriMesh,
    values: np.ndarray,
    vertex: int
) -> np.ndarray:
    """Computes centroid-weighted gradients of vertex fields at a vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    values: numpy.ndarray
        Field values with the vertex axis first, e.g. shape ``(n_v, )`` for a
        scalar function or ``(n_v, 3)`` for the components of a vector field
    vertex: int
        Vertex index

    Returns
    -------
    numpy.ndarray
        Gradient with shape ``(3, ) + values.shape[1:]``; for a vector field
        column `k` is the gradient of component `k`

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.
    meshcurv.errors.SingularGramMatrix
        When an incident face is degenerate.

    """
    weights = centroid_weights(mesh, vertex)
    gradient = np.zeros((3, ) + values.shape[1:])
    for face, weight in zip(weights.faces, weights.weights):
        gradient += weight * _solve_face_gradient(mesh, face, vertex, values)
    return gradient


def vertex_gradients(
    mesh: TriMesh,
    g: Union[VertexFunction, np.ndarray, Sequence[float]]
) -> np.ndarray:
    """Computes the gradient of a vertex function at every vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    g: Union[meshcurv.calculus.VertexFunction, numpy.ndarray, Sequence[float]]
        Function values at the vertices

    Returns
    -------
    numpy.ndarray
        Gradients with shape ``(n_v, 3)``; rows of isolated vertices are
        ``nan``

    """
    return _weighted_vertex_sum(mesh, face_gradients(mesh, g))


def vertex_normal(mesh: TriMesh, vertex: int) -> np.ndarray:
    """Computes the centroid-weighted unit normal at a vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index

    Returns
    -------
    numpy.ndarray
        Unit normal vector

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.
    meshcurv.errors.ZeroNormalSum
        When the weighted face normals cancel out.

    """
    weights = centroid_weights(mesh, vertex)
    total = weights.weights @ mesh.face_normals[list(weights.faces)]
    length = np.linalg.norm(total)
    if not length >= NORMAL_SUM_TOLERANCE:
        raise ZeroNormalSum(
            f'Weighted face normals around vertex {vertex} cancel out.',
            vertex=vertex
        )
    return total / length


def vertex_normals(mesh: TriMesh) -> np.ndarray:
    """Computes the centroid-weighted unit normal at every vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh

    Returns
    -------
    numpy.ndarray
        Unit normals with shape ``(n_v, 3)``; rows of isolated vertices and
        of vertices whose weighted face normals cancel out are ``nan``

    """
    totals = _weighted_vertex_sum(mesh, mesh.face_normals)
    lengths = np.linalg.norm(totals, axis=1)
    cancelled = lengths < NORMAL_SUM_TOLERANCE
    if np.any(cancelled):
        logger.warning(
            f'weighted face normals cancel out at {np.sum(cancelled)} '
            'vertices'
        )
    with np.errstate(invalid='ignore', divide='ignore'):
        normals = totals / lengths[:, np.newaxis]
    normals[cancelled] = np.nan
    return normals

"""Indexed triangle meshes with one-ring adjacency and per-face geometry."""
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import numpy as np
from scipy import sparse

from meshcurv.errors import (
    DegenerateFace,
    DuplicateVertexInFace,
    IndexOutOfRange,
)


logger = logging.getLogger(__name__)


AREA_TOLERANCE_FACTOR = 1e-12
"""Factor of the squared bounding box diagonal below which a face area is
considered zero."""


@dataclass(frozen=True)
class FaceGeometry:

    """Area, centroid and unit normal of a triangle face."""

    area: float
    centroid: np.ndarray
    unit_normal: np.ndarray


@dataclass(frozen=True)
class VertexStar:

    """One-ring of a vertex.

    Attributes
    ----------
    vertex: int
        Index of the center vertex
    neighbors: Tuple[int, ...]
        Neighbor vertices, in cyclic order following the face winding when the
        star is a disk and in order of first appearance otherwise
    incident_faces: Tuple[int, ...]
        Faces that contain the center vertex
    is_boundary: bool
        Whether the incident faces fail to close a cycle around the vertex

    """

    vertex: int
    neighbors: Tuple[int, ...]
    incident_faces: Tuple[int, ...]
    is_boundary: bool


@dataclass(frozen=True)
class InconsistentEdge:

    """An edge traversed in the same direction by more than one face."""

    vertices: Tuple[int, int]
    faces: Tuple[int, ...]


def _opposite_edge(face: Sequence[int], vertex: int) -> Tuple[int, int]:
    """Returns the edge of `face` opposite to `vertex` in winding order."""
    if face[0] == vertex:
        return (face[1], face[2])
    if face[1] == vertex:
        return (face[2], face[0])
    return (face[0], face[1])


def _walk_link(
    link: Dict[int, Set[int]],
    start: int,
    first_step: Optional[int]
) -> List[int]:
    """Walks the link graph of a vertex from `start` until the path closes,
    ends or branches.

    Returns
    -------
    List[int]
        Visited link vertices in order

    """
    path = [start]
    previous, current = start, first_step
    while current is not None and current != start:
        if current in path or len(link[current]) > 2:
            break
        path.append(current)
        candidates = sorted(w for w in link[current] if w != previous)
        previous, current = current, (candidates[0] if candidates else None)
    return path


def _build_star(
    vertex: int,
    faces: Sequence[Sequence[int]],
    incident: List[int]
) -> VertexStar:
    """Builds the one-ring of `vertex` from its incident faces."""
    order: List[int] = []
    link: Dict[int, Set[int]] = {}
    successor: Dict[int, int] = {}
    for f in incident:
        a, b = _opposite_edge(faces[f], vertex)
        for w in (a, b):
            if w not in link:
                order.append(w)
                link[w] = set()
        link[a].add(b)
        link[b].add(a)
        successor.setdefault(a, b)

    if len(incident) == 0:
        return VertexStar(vertex, (), (), True)

    degrees = {w: len(link[w]) for w in order}
    endpoints = [w for w in order if degrees[w] == 1]
    is_cycle = (
        len(incident) == len(order) and
        all(d == 2 for d in degrees.values())
    )
    path: List[int] = []
    if is_cycle:
        start = int(_opposite_edge(faces[incident[0]], vertex)[0])
        path = _walk_link(link, start, successor.get(start))
        if len(path) != len(order):
            is_cycle = False
            path = []
    elif len(endpoints) == 2 and all(d <= 2 for d in degrees.values()):
        heads = [w for w in endpoints if w in successor]
        start = heads[0] if heads else min(endpoints)
        path = _walk_link(link, start, next(iter(link[start])))

    if len(path) == len(order):
        neighbors = tuple(int(w) for w in path)
    else:
        neighbors = tuple(int(w) for w in order)
    return VertexStar(
        vertex=vertex,
        neighbors=neighbors,
        incident_faces=tuple(incident),
        is_boundary=not is_cycle,
    )


class TriMesh(object):

    """Immutable indexed triangle mesh.

    Vertex stars (one-rings) and per-face areas, centroids and unit normals
    are computed on construction; all queries are read-only.

    Examples
    --------
    >>> from meshcurv.mesh import TriMesh
    >>> mesh = TriMesh(
    ...     [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)],
    ...     [(0, 1, 2)]
    ... )
    >>> mesh.n_vertices, mesh.n_faces
    (3, 1)

    """

    def __init__(
        self,
        vertices: Union[np.ndarray, Sequence[Sequence[float]]],
        faces: Union[np.ndarray, Sequence[Sequence[int]]]
    ) -> None:
        """
        Parameters
        ----------
        vertices: Union[numpy.ndarray, Sequence[Sequence[float]]]
            Vertex positions, array of shape ``(n_v, 3)``
        faces: Union[numpy.ndarray, Sequence[Sequence[int]]]
            Zero-based vertex indices of each triangle, array of shape
            ``(n_F, 3)``. Counterclockwise winding defines the side the face
            normal points to.

        Raises
        ------
        TypeError
            When `faces` does not contain integer values.
        ValueError
            When `vertices` or `faces` have an incorrect shape or when
            `vertices` contains non-finite values.
        meshcurv.errors.IndexOutOfRange
            When a face references a vertex that does not exist.
        meshcurv.errors.DuplicateVertexInFace
            When a face references the same vertex more than once.
        meshcurv.errors.DegenerateFace
            When a face has zero area.

        """
        points = np.array(vertices, dtype=np.float64)
        if points.size == 0:
            points = points.reshape(0, 3)
        if points.ndim != 2 or points.shape[1] != 3:
            raise ValueError(
                'Argument "vertices" must be an array with shape [n, 3].'
            )
        if not np.all(np.isfinite(points)):
            raise ValueError('Argument "vertices" must be finite.')

        triangles = np.array(faces)
        if triangles.size == 0:
            triangles = triangles.reshape(0, 3)
        if triangles.ndim != 2 or triangles.shape[1] != 3:
            raise ValueError(
                'Argument "faces" must be an array with shape [n, 3].'
            )
        if not np.issubdtype(triangles.dtype, np.integer):
            if not np.all(np.equal(np.mod(triangles, 1), 0)):
                raise TypeError('Argument "faces" must contain integers.')
        triangles = triangles.astype(np.int64)

        n_vertices = points.shape[0]
        out_of_range = np.nonzero((triangles < 0) | (triangles >= n_vertices))
        if len(out_of_range[0]) > 0:
            f = int(out_of_range[0][0])
            index = int(triangles[f, out_of_range[1][0]])
            raise IndexOutOfRange(
                f'Face #{f} references vertex {index}, but the mesh has '
                f'{n_vertices} vertices.',
                index=index
            )
        repeated = np.nonzero(
            (triangles[:, 0] == triangles[:, 1]) |
            (triangles[:, 1] == triangles[:, 2]) |
            (triangles[:, 0] == triangles[:, 2])
        )[0]
        if len(repeated) > 0:
            f = int(repeated[0])
            raise DuplicateVertexInFace(
                f'Face #{f} references a vertex more than once: '
                f'{tuple(triangles[f].tolist())}.',
                face=f
            )

        if n_vertices > 0:
            extent = points.max(axis=0) - points.min(axis=0)
            self._diagonal = float(np.linalg.norm(extent))
        else:
            self._diagonal = 0.0
        self._area_tolerance = AREA_TOLERANCE_FACTOR * self._diagonal ** 2

        v0 = points[triangles[:, 0]]
        v1 = points[triangles[:, 1]]
        v2 = points[triangles[:, 2]]
        cross = np.cross(v1 - v0, v2 - v0)
        norms = np.linalg.norm(cross, axis=1)
        areas = 0.5 * norms
        degenerate = np.nonzero(~(areas > self._area_tolerance))[0]
        if len(degenerate) > 0:
            f = int(degenerate[0])
            raise DegenerateFace(
                f'Face #{f} has zero area (area {areas[f]!r}, '
                f'tolerance {self._area_tolerance!r}).',
                face=f
            )

        self._vertices = points
        self._faces = triangles
        self._areas = areas
        self._centroids = (v0 + v1 + v2) / 3.0
        if len(norms) > 0:
            self._normals = cross / norms[:, np.newaxis]
        else:
            self._normals = np.zeros((0, 3), dtype=np.float64)
        for array in (
            self._vertices,
            self._faces,
            self._areas,
            self._centroids,
            self._normals,
        ):
            array.flags.writeable = False

        logger.debug(
            f'build vertex stars for {n_vertices} vertices and '
            f'{len(triangles)} faces'
        )
        incident: List[List[int]] = [[] for _ in range(n_vertices)]
        for f, face in enumerate(triangles.tolist()):
            for v in face:
                incident[v].append(f)
        face_list = triangles.tolist()
        self._stars = tuple(
            _build_star(v, face_list, incident[v])
            for v in range(n_vertices)
        )

    def __repr__(self) -> str:
        return (
            f'TriMesh(n_vertices={self.n_vertices}, n_faces={self.n_faces})'
        )

    @property
    def vertices(self) -> np.ndarray:
        """numpy.ndarray: read-only vertex positions, shape ``(n_v, 3)``"""
        return self._vertices

    @property
    def faces(self) -> np.ndarray:
        """numpy.ndarray: read-only vertex indices, shape ``(n_F, 3)``"""
        return self._faces

    @property
    def n_vertices(self) -> int:
        """int: number of vertices"""
        return self._vertices.shape[0]

    @property
    def n_faces(self) -> int:
        """int: number of faces"""
        return self._faces.shape[0]

    @property
    def face_areas(self) -> np.ndarray:
        """numpy.ndarray: area of each face"""
        return self._areas

    @property
    def face_centroids(self) -> np.ndarray:
        """numpy.ndarray: centroid of each face, shape ``(n_F, 3)``"""
        return self._centroids

    @property
    def face_normals(self) -> np.ndarray:
        """numpy.ndarray: unit normal of each face, shape ``(n_F, 3)``"""
        return self._normals

    @property
    def bounding_box_diagonal(self) -> float:
        """float: length of the diagonal of the axis-aligned bounding box"""
        return self._diagonal

    @property
    def area_tolerance(self) -> float:
        """float: face areas at or below this value are degenerate"""
        return self._area_tolerance

    @property
    def stars(self) -> Tuple[VertexStar, ...]:
        """Tuple[meshcurv.mesh.VertexStar, ...]: one-ring of each vertex"""
        return self._stars

    def _check_vertex(self, vertex: int) -> int:
        if not 0 <= vertex < self.n_vertices:
            raise IndexError(
                f'Argument "vertex" must be in range [0, {self.n_vertices}), '
                f'got {vertex}.'
            )
        return int(vertex)

    def star(self, vertex: int) -> VertexStar:
        """Gets the one-ring of a vertex.

        Parameters
        ----------
        vertex: int
            Vertex index

        Returns
        -------
        meshcurv.mesh.VertexStar
            Neighbors, incident faces and boundary flag of the vertex

        Raises
        ------
        IndexError
            When `vertex` is out of range.

        """
        return self._stars[self._check_vertex(vertex)]

    def neighbors(self, vertex: int) -> Tuple[int, ...]:
        """Tuple[int, ...]: neighbor vertices of `vertex`"""
        return self.star(vertex).neighbors

    def incident_faces(self, vertex: int) -> Tuple[int, ...]:
        """Tuple[int, ...]: faces that contain `vertex`"""
        return self.star(vertex).incident_faces

    def is_boundary(self, vertex: int) -> bool:
        """bool: whether `vertex` lies on the mesh boundary"""
        return self.star(vertex).is_boundary

    def shared_faces(self, vertex: int, neighbor: int) -> Tuple[int, ...]:
        """Faces that contain both `vertex` and `neighbor`.

        Parameters
        ----------
        vertex: int
            Vertex index
        neighbor: int
            Index of another vertex

        Returns
        -------
        Tuple[int, ...]
            Indices of faces incident to both vertices (one for a boundary
            edge, two for an interior edge of a manifold mesh)

        """
        return tuple(
            f for f in self.star(vertex).incident_faces
            if neighbor in self._faces[f]
        )


def build_mesh(
    points: Union[np.ndarray, Sequence[Sequence[float]]],
    face_indices: Union[np.ndarray, Sequence[Sequence[int]]]
) -> TriMesh:
    """Builds a triangle mesh with precomputed adjacency.

    Parameters
    ----------
    points: Union[numpy.ndarray, Sequence[Sequence[float]]]
        Vertex positions
    face_indices: Union[numpy.ndarray, Sequence[Sequence[int]]]
        Zero-based vertex index triples

    Returns
    -------
    meshcurv.mesh.TriMesh
        Validated mesh

    Note
    ----
    This function is a convenient wrapper around
    ``meshcurv.mesh.TriMesh``; see its constructor for the raised errors.

    """
    return TriMesh(points, face_indices)


def face_geometry(mesh: TriMesh, face: int) -> FaceGeometry:
    """Gets the geometry of a face.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    face: int
        Face index

    Returns
    -------
    meshcurv.mesh.FaceGeometry
        Area, centroid and unit normal (respecting the winding) of the face

    Raises
    ------
    IndexError
        When `face` is out of range.

    """
    if not 0 <= face < mesh.n_faces:
        raise IndexError(
            f'Argument "face" must be in range [0, {mesh.n_faces}), '
            f'got {face}.'
        )
    return FaceGeometry(
        area=float(mesh.face_areas[face]),
        centroid=mesh.face_centroids[face].copy(),
        unit_normal=mesh.face_normals[face].copy(),
    )


def check_orientation(mesh: TriMesh) -> List[InconsistentEdge]:
    """Finds edges whose incident faces are wound inconsistently.

    Two neighboring faces are consistently oriented when they traverse their
    shared edge in opposite directions. Counting directed edges therefore
    reveals every edge that is traversed twice in the same direction.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh

    Returns
    -------
    List[meshcurv.mesh.InconsistentEdge]
        Directed edges traversed in the same direction by more than one
        face, ordered by vertex indices. An empty list means the mesh is
        consistently oriented.

    """
    faces = mesh.faces
    if mesh.n_faces == 0:
        return []
    i = faces.reshape(-1)
    j = np.roll(faces, -1, axis=1).reshape(-1)
    n = mesh.n_vertices
    directed = sparse.coo_matrix(
        (np.ones(i.shape), (i, j)),
        shape=(n, n)
    ).tocsr()
    directed.sum_duplicates()
    counts = directed.tocoo()
    repeated = {
        (int(a), int(b))
        for a, b, c in zip(counts.row, counts.col, counts.data)
        if c > 1
    }
    if not repeated:
        return []

    traversals: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for f, face in enumerate(faces.tolist()):
        for k in range(3):
            edge = (face[k], face[(k + 1) % 3])
            if edge in repeated:
                traversals[edge].append(f)
    report = [
        InconsistentEdge(vertices=edge, faces=tuple(traversals[edge]))
        for edge in sorted(repeated)
    ]
    logger.warning(f'found {len(report)} inconsistently oriented edges')
    return report


def find_degenerate_faces(
    points: Union[np.ndarray, Sequence[Sequence[float]]],
    face_indices: Union[np.ndarray, Sequence[Sequence[int]]]
) -> List[Tuple[int, str]]:
    """Scans faces for problems that would make mesh construction fail.

    Parameters
    ----------
    points: Union[numpy.ndarray, Sequence[Sequence[float]]]
        Vertex positions
    face_indices: Union[numpy.ndarray, Sequence[Sequence[int]]]
        Zero-based vertex index triples

    Returns
    -------
    List[Tuple[int, str]]
        Index of each offending face with the reason (``"index out of
        range"``, ``"repeated vertex"`` or ``"zero area"``)

    """
    vertices = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    faces = np.asarray(face_indices, dtype=np.int64).reshape(-1, 3)
    if len(vertices) > 0:
        extent = vertices.max(axis=0) - vertices.min(axis=0)
        tolerance = AREA_TOLERANCE_FACTOR * float(np.sum(extent ** 2))
    else:
        tolerance = 0.0
    findings = []
    for f, face in enumerate(faces.tolist()):
        if any(v < 0 or v >= len(vertices) for v in face):
            findings.append((f, 'index out of range'))
        elif len(set(face)) < 3:
            findings.append((f, 'repeated vertex'))
        else:
            p0, p1, p2 = vertices[face]
            area = 0.5 * np.linalg.norm(np.cross(p1 - p0, p2 - p0))
            if not area > tolerance:
                findings.append((f, 'zero area'))
    return findings


def flip_orientation(mesh: TriMesh) -> TriMesh:
    """Reverses the winding of every face.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh with the same vertices and every face normal negated

    """
    return TriMesh(mesh.vertices, mesh.faces[:, ::-1])


def transform_mesh(
    mesh: TriMesh,
    rotation: Optional[np.ndarray] = None,
    translation: Optional[Sequence[float]] = None,
    scale: float = 1.0
) -> TriMesh:
    """Applies a similarity transformation to the vertices of a mesh.

    Vertices are mapped to ``scale * rotation @ p + translation``.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    rotation: numpy.ndarray, optional
        3 x 3 rotation matrix. Defaults to the identity.
    translation: Sequence[float], optional
        Translation vector. Defaults to zero.
    scale: float, optional
        Positive scale factor. Default: ``1.0``

    Returns
    -------
    meshcurv.mesh.TriMesh
        Transformed mesh with the same faces

    Raises
    ------
    ValueError
        When `scale` is not positive or `rotation` has an incorrect shape.

    """
    if not scale > 0.0:
        raise ValueError('Argument "scale" must be positive.')
    if rotation is None:
        rotation = np.eye(3)
    rotation = np.asarray(rotation, dtype=np.float64)
    if rotation.shape != (3, 3):
        raise ValueError('Argument "rotation" must have shape [3, 3].')
    if translation is None:
        translation = np.zeros(3)
    offset = np.asarray(translation, dtype=np.float64)
    points = scale * mesh.vertices @ rotation.T + offset
    return TriMesh(points, mesh.faces)

"""Built-in meshes of surfaces with known curvature."""
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from meshcurv.mesh import TriMesh


logger = logging.getLogger(__name__)


HeightFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _grid_faces(n_u: int, n_v: int) -> np.ndarray:
    """Triangulates a grid of ``n_u x n_v`` vertices indexed ``j n_u + i``
    counterclockwise in the ``(u, v)`` plane.

    """
    i, j = np.meshgrid(np.arange(n_u - 1), np.arange(n_v - 1), indexing='xy')
    a = (j * n_u + i).reshape(-1)
    b = a + 1
    c = a + n_u + 1
    d = a + n_u
    lower = np.stack([a, b, c], axis=1)
    upper = np.stack([a, c, d], axis=1)
    return np.stack([lower, upper], axis=1).reshape(-1, 3)


def monge_grid(
    function: HeightFunction,
    n: int = 21,
    half_width: float = 0.5
) -> TriMesh:
    """Triangulates the graph of a height function over a square.

    Parameters
    ----------
    function: Callable[[numpy.ndarray, numpy.ndarray], numpy.ndarray]
        Vectorized height function ``z = f(u, v)``
    n: int, optional
        Number of grid vertices along each side
    half_width: float, optional
        The grid covers ``[-half_width, half_width]^2``

    Returns
    -------
    meshcurv.mesh.TriMesh
        Grid mesh with upward face normals; vertex ``j n + i`` lies above the
        grid point ``(u_i, v_j)`` and the center vertex is ``(n // 2)(n + 1)``
        for odd `n`

    Raises
    ------
    ValueError
        When `n` is less than 2 or `half_width` is not positive.

    """
    if n < 2:
        raise ValueError('Argument "n" must be at least 2.')
    if not half_width > 0.0:
        raise ValueError('Argument "half_width" must be positive.')
    coordinates = np.linspace(-half_width, half_width, n)
    u, v = np.meshgrid(coordinates, coordinates, indexing='xy')
    u = u.reshape(-1)
    v = v.reshape(-1)
    z = np.broadcast_to(np.asarray(function(u, v), dtype=np.float64), u.shape)
    return TriMesh(np.stack([u, v, z], axis=1), _grid_faces(n, n))


def plane_grid(
    n_u: int = 10,
    n_v: Optional[int] = None,
    spacing: float = 1.0
) -> TriMesh:
    """Triangulates a rectangular grid in the xy-plane.

    Parameters
    ----------
    n_u: int, optional
        Number of vertices along x
    n_v: int, optional
        Number of vertices along y. Defaults to `n_u`.
    spacing: float, optional
        Distance between neighboring grid vertices

    Returns
    -------
    meshcurv.mesh.TriMesh
        Planar mesh with face normals ``(0, 0, 1)``; vertex ``j n_u + i``
        is located at ``(i spacing, j spacing, 0)``

    """
    if n_v is None:
        n_v = n_u
    if n_u < 2 or n_v < 2:
        raise ValueError('Grid must have at least 2 vertices per side.')
    if not spacing > 0.0:
        raise ValueError('Argument "spacing" must be positive.')
    i, j = np.meshgrid(np.arange(n_u), np.arange(n_v), indexing='xy')
    points = np.stack(
        [
            spacing * i.reshape(-1),
            spacing * j.reshape(-1),
            np.zeros(n_u * n_v),
        ],
        axis=1
    )
    return TriMesh(points, _grid_faces(n_u, n_v))


_ICOSAHEDRON_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def icosphere(level: int = 3, radius: float = 1.0) -> TriMesh:
    """Builds a sphere by repeated subdivision of an icosahedron.

    Each subdivision splits every triangle into four at the edge midpoints,
    which are pushed onto the sphere.

    Parameters
    ----------
    level: int, optional
        Number of subdivisions; level 0 is the icosahedron
    radius: float, optional
        Sphere radius

    Returns
    -------
    meshcurv.mesh.TriMesh
        Closed mesh with ``10 * 4**level + 2`` vertices and outward face
        normals

    """
    if level < 0:
        raise ValueError('Argument "level" must not be negative.')
    if not radius > 0.0:
        raise ValueError('Argument "radius" must be positive.')
    t = 0.5 * (1.0 + np.sqrt(5.0))
    points: List[np.ndarray] = [
        np.array(p, dtype=np.float64) / np.sqrt(1.0 + t * t)
        for p in [
            (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
            (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
            (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
        ]
    ]
    faces = list(_ICOSAHEDRON_FACES)
    for _ in range(level):
        midpoints: Dict[Tuple[int, int], int] = {}

        def midpoint(a: int, b: int) -> int:
            key = (min(a, b), max(a, b))
            if key not in midpoints:
                p = points[a] + points[b]
                points.append(p / np.linalg.norm(p))
                midpoints[key] = len(points) - 1
            return midpoints[key]

        subdivided = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            subdivided.extend([
                (a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca),
            ])
        faces = subdivided

    vertices = radius * np.array(points)
    triangles = np.array(faces, dtype=np.int64)
    corners = vertices[triangles]
    normals = np.cross(
        corners[:, 1] - corners[:, 0],
        corners[:, 2] - corners[:, 0]
    )
    inward = np.einsum('ij,ij->i', normals, corners.sum(axis=1)) < 0.0
    triangles[inward] = triangles[inward][:, ::-1]
    logger.debug(
        f'built icosphere of level {level} with {len(vertices)} vertices'
    )
    return TriMesh(vertices, triangles)


def cylinder(
    radius: float = 1.0,
    height: float = 2.0,
    n_around: int = 32,
    n_along: int = 9
) -> TriMesh:
    """Triangulates an open cylinder around the z-axis.

    Parameters
    ----------
    radius: float, optional
        Cylinder radius
    height: float, optional
        Extent along the z-axis, centered at ``z = 0``
    n_around: int, optional
        Number of vertices on each ring
    n_along: int, optional
        Number of rings

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh with outward face normals; the first and last ring are boundary
        vertices

    """
    if n_around < 3 or n_along < 2:
        raise ValueError(
            'Cylinder needs at least 3 vertices per ring and 2 rings.'
        )
    theta = 2.0 * np.pi * np.arange(n_around) / n_around
    z = np.linspace(-0.5 * height, 0.5 * height, n_along)
    angle, level = np.meshgrid(theta, z, indexing='xy')
    points = np.stack(
        [
            radius * np.cos(angle.reshape(-1)),
            radius * np.sin(angle.reshape(-1)),
            level.reshape(-1),
        ],
        axis=1
    )
    faces = []
    for k in range(n_along - 1):
        for i in range(n_around):
            a = k * n_around + i
            b = k * n_around + (i + 1) % n_around
            c = b + n_around
            d = a + n_around
            faces.extend([(a, b, c), (a, c, d)])
    return TriMesh(points, faces)


def fan_mesh(
    angles: Sequence[float],
    radii: Sequence[float],
    function: Optional[HeightFunction] = None,
    outer_ring: bool = False
) -> TriMesh:
    """Triangulates a closed fan around the origin.

    Parameters
    ----------
    angles: Sequence[float]
        Increasing polar angles of the ring vertices in radians
    radii: Sequence[float]
        Distance of each ring vertex from the z-axis
    function: Callable[[numpy.ndarray, numpy.ndarray], numpy.ndarray], optional
        Height function ``z = f(u, v)``. Defaults to the plane ``z = 0``.
    outer_ring: bool, optional
        Whether to surround the fan with a second ring, so that the ring
        vertices have closed stars as well. Vertex ``n + 1 + i`` lies at
        twice the radius of ring vertex ``1 + i`` and vertex
        ``2 n + 1 + i`` halfway between the angles of ring vertices
        ``1 + i`` and ``1 + (i + 1) % n`` at the sum of their radii. The star
        of the center vertex is the same with and without the outer ring.

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh whose vertex 0 is the center ``(0, 0, f(0, 0))`` and whose
        faces ``(0, i, i + 1)`` wind counterclockwise in the xy-projection

    """
    theta = np.asarray(angles, dtype=np.float64)
    r = np.asarray(radii, dtype=np.float64)
    if theta.shape != r.shape or theta.ndim != 1 or len(theta) < 3:
        raise ValueError(
            'Arguments "angles" and "radii" must have the same length of at '
            'least 3.'
        )
    n = len(theta)
    ring = np.arange(1, n + 1)
    following = np.roll(ring, -1)
    faces = np.stack([np.zeros(n, dtype=int), ring, following], axis=1)
    u = np.concatenate([[0.0], r * np.cos(theta)])
    v = np.concatenate([[0.0], r * np.sin(theta)])
    if outer_ring:
        gaps = np.diff(np.append(theta, theta[0] + 2.0 * np.pi))
        middle = theta + 0.5 * gaps
        middle_radii = r + np.roll(r, -1)
        u = np.concatenate([u, 2.0 * u[1:], middle_radii * np.cos(middle)])
        v = np.concatenate([v, 2.0 * v[1:], middle_radii * np.sin(middle)])
        radial = ring + n
        between = ring + 2 * n
        faces = np.concatenate([
            faces,
            np.stack([ring, between, following], axis=1),
            np.stack([ring, radial, between], axis=1),
            np.stack([following, between, np.roll(radial, -1)], axis=1),
        ])
    if function is None:
        z = np.zeros_like(u)
    else:
        z = np.broadcast_to(
            np.asarray(function(u, v), dtype=np.float64), u.shape
        )
    return TriMesh(np.stack([u, v, z], axis=1), faces)


def symmetric_fan(
    n: int = 6,
    radius: float = 1.0,
    function: Optional[HeightFunction] = None
) -> TriMesh:
    """Triangulates a fan with equally spaced ring vertices.

    Parameters
    ----------
    n: int, optional
        Number of ring vertices
    radius: float, optional
        Distance of the ring vertices from the z-axis
    function: Callable[[numpy.ndarray, numpy.ndarray], numpy.ndarray], optional
        Height function. Defaults to the plane ``z = 0``.

    Returns
    -------
    meshcurv.mesh.TriMesh
        Fan mesh with center vertex 0 (see ``fan_mesh()``)

    """
    angles = 2.0 * np.pi * np.arange(n) / n
    return fan_mesh(angles, np.full(n, radius), function)


def square_pyramid(height: float = 1.0) -> TriMesh:
    """Builds the lateral faces of a square pyramid.

    Parameters
    ----------
    height: float, optional
        Height of the apex above the unit square base centered at the origin

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh with apex vertex 0 and four base vertices

    """
    points = [
        (0.0, 0.0, height),
        (0.5, -0.5, 0.0),
        (0.5, 0.5, 0.0),
        (-0.5, 0.5, 0.0),
        (-0.5, -0.5, 0.0),
    ]
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1)]
    return TriMesh(points, faces)

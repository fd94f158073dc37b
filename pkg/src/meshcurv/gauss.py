"""Curvature estimation from the gradient of the discrete Gauss map.

The unit normal at each vertex defines three vertex functions, the
components of the Gauss map. Their centroid-weighted gradients form the
differential ``dN`` of the Gauss map, whose restriction to the tangent plane
is the shape operator.

"""
import logging
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from meshcurv.baselines import chen_schmitt_estimate, taubin_estimate
from meshcurv.calculus import VertexFunction, vertex_normal, weighted_gradient
from meshcurv.content import CurvatureResult, ShapeOperator2, TangentBasis
from meshcurv.enum import MethodValues, WeightSchemeValues
from meshcurv.errors import EmptyMesh, IsolatedVertex, ZeroNormalSum
from meshcurv.mesh import TriMesh
from meshcurv.spatial import tangent_basis
from meshcurv.utils import (
    canonical_sign,
    is_umbilic,
    parallel_map,
    symmetric_eigen_2x2,
)


logger = logging.getLogger(__name__)


GaussMapComponents = Tuple[VertexFunction, VertexFunction, VertexFunction]


def _try_vertex_normal(
    mesh: TriMesh,
    vertex: int
) -> Union[np.ndarray, Exception]:
    try:
        return vertex_normal(mesh, vertex)
    except (IsolatedVertex, ZeroNormalSum) as error:
        return error


def _normal_field(
    mesh: TriMesh,
    vertices: Sequence[int],
    num_threads: Optional[int] = None
) -> Tuple[np.ndarray, Dict[int, Exception]]:
    """Computes vertex normals of selected vertices.

    Returns
    -------
    Tuple[numpy.ndarray, Dict[int, Exception]]
        Normals with shape ``(n_v, 3)``, ``nan`` for vertices that were not
        selected or failed, and the error of each failed vertex

    """
    normals = np.full((mesh.n_vertices, 3), np.nan)
    failures: Dict[int, Exception] = {}
    outcomes = parallel_map(
        partial(_try_vertex_normal, mesh),
        vertices,
        num_threads
    )
    for vertex, outcome in zip(vertices, outcomes):
        if isinstance(outcome, Exception):
            failures[vertex] = outcome
        else:
            normals[vertex] = outcome
    return normals, failures


def gauss_map_field(
    mesh: TriMesh,
    num_threads: Optional[int] = None
) -> Tuple[GaussMapComponents, np.ndarray]:
    """Computes the discrete Gauss map.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    num_threads: int, optional
        Number of worker threads

    Returns
    -------
    Tuple[Tuple[meshcurv.calculus.VertexFunction, ...], numpy.ndarray]
        The three components ``n_1``, ``n_2``, ``n_3`` of the unit normal as
        vertex functions and the unit normals with shape ``(n_v, 3)``

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When a vertex is not contained in any face.
    meshcurv.errors.ZeroNormalSum
        When the weighted face normals around a vertex cancel out.

    """
    logger.debug(f'compute gauss map of {mesh.n_vertices} vertices')
    normals, failures = _normal_field(
        mesh,
        range(mesh.n_vertices),
        num_threads
    )
    if failures:
        raise failures[min(failures)]
    normals.flags.writeable = False
    components = (
        VertexFunction(mesh, normals[:, 0]),
        VertexFunction(mesh, normals[:, 1]),
        VertexFunction(mesh, normals[:, 2]),
    )
    return components, normals


def estimate_dN(
    mesh: TriMesh,
    vertex: int,
    normals: Optional[np.ndarray] = None
) -> np.ndarray:
    """Estimates the differential of the Gauss map at a vertex.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index
    normals: numpy.ndarray, optional
        Unit normals of (at least) the vertex and its neighbors, shape
        ``(n_v, 3)``. Computed from the mesh when omitted.

    Returns
    -------
    numpy.ndarray
        3 x 3 matrix whose column `k` is the gradient of the normal
        component ``n_k`` at the vertex

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.
    meshcurv.errors.ZeroNormalSum
        When a required vertex normal cannot be computed.

    """
    if normals is None:
        star = mesh.star(vertex)
        normals = np.zeros((mesh.n_vertices, 3))
        for w in (vertex, ) + star.neighbors:
            normals[w] = vertex_normal(mesh, w)
    return weighted_gradient(mesh, np.asarray(normals), vertex)


def project_shape_operator(
    dN: np.ndarray,
    basis: TangentBasis,
    symmetrize: bool = True
) -> ShapeOperator2:
    """Represents the differential of the Gauss map in a tangent basis.

    Parameters
    ----------
    dN: numpy.ndarray
        3 x 3 differential as returned by ``estimate_dN()``
    basis: meshcurv.content.TangentBasis
        Orthonormal tangent basis ``(e1, e2)``
    symmetrize: bool, optional
        Whether to replace the matrix by its symmetric part

    Returns
    -------
    meshcurv.content.ShapeOperator2
        Matrix with entries ``a_ij = <e_i, dN e_j>``

    Raises
    ------
    ValueError
        When `dN` does not have shape ``(3, 3)``.

    """
    dN = np.asarray(dN, dtype=np.float64)
    if dN.shape != (3, 3):
        raise ValueError('Argument "dN" must have shape [3, 3].')
    a = basis.matrix.T @ dN @ basis.matrix
    asymmetry = float(abs(a[0, 1] - a[1, 0]))
    if symmetrize:
        a = 0.5 * (a + a.T)
    return ShapeOperator2(
        a=a,
        basis=basis,
        symmetrized=symmetrize,
        asymmetry=asymmetry
    )


def curvatures_from_shape_operator(
    shape_operator: ShapeOperator2,
    vertex: int = -1,
    boundary: bool = False
) -> CurvatureResult:
    """Extracts curvatures from a shape operator.

    The Gaussian curvature is ``det(A)``, the mean curvature is
    ``-trace(A) / 2`` and the principal curvatures are the negated
    eigenvalues of `A`. For the unit sphere with outward normals ``A`` is the
    identity, so that ``K = 1``, ``H = -1`` and ``kappa1 = kappa2 = -1``.

    Parameters
    ----------
    shape_operator: meshcurv.content.ShapeOperator2
        Symmetrized shape operator
    vertex: int, optional
        Vertex index recorded in the result
    boundary: bool, optional
        Whether the vertex lies on the mesh boundary

    Returns
    -------
    meshcurv.content.CurvatureResult
        Estimate tagged ``gauss-grad``

    Raises
    ------
    ValueError
        When `shape_operator` is not symmetrized.

    """
    if not shape_operator.symmetrized:
        raise ValueError(
            'Argument "shape_operator" must be symmetrized.'
        )
    a = shape_operator.a
    basis = shape_operator.basis
    gaussian = float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    mean = float(-0.5 * (a[0, 0] + a[1, 1]))
    eigenvalues, eigenvectors = symmetric_eigen_2x2(a)
    kappa1 = float(-eigenvalues[1])
    kappa2 = float(-eigenvalues[0])
    dir1 = canonical_sign(basis.to_ambient(eigenvectors[:, 1]))
    dir2 = canonical_sign(basis.to_ambient(eigenvectors[:, 0]))
    return CurvatureResult(
        vertex=vertex,
        method=MethodValues.GAUSS_GRAD,
        gaussian=gaussian,
        mean=mean,
        kappa1=kappa1,
        kappa2=kappa2,
        dir1=dir1,
        dir2=dir2,
        normal=basis.n,
        boundary=boundary,
        degraded=False,
        indeterminate_directions=is_umbilic(kappa1, kappa2),
        asymmetry=shape_operator.asymmetry,
    )


def _gauss_grad_vertex(
    mesh: TriMesh,
    normals: np.ndarray,
    vertex: int
) -> CurvatureResult:
    star = mesh.star(vertex)
    for w in (vertex, ) + star.neighbors:
        if not np.all(np.isfinite(normals[w])):
            raise ZeroNormalSum(
                f'Normal of vertex {w} in the star of vertex {vertex} is '
                'undefined.',
                vertex=w
            )
    dN = estimate_dN(mesh, vertex, normals)
    basis = tangent_basis(normals[vertex])
    shape_operator = project_shape_operator(dN, basis, symmetrize=True)
    return curvatures_from_shape_operator(
        shape_operator,
        vertex=vertex,
        boundary=star.is_boundary
    )


def _estimate_vertex(
    mesh: TriMesh,
    method: MethodValues,
    normals: np.ndarray,
    vertex: int
) -> CurvatureResult:
    """Estimates curvatures at a vertex, degrading instead of raising."""
    boundary = mesh.is_boundary(vertex)
    normal = normals[vertex]
    try:
        if not np.all(np.isfinite(normal)):
            raise ZeroNormalSum(
                f'Normal of vertex {vertex} is undefined.',
                vertex=vertex
            )
        if method == MethodValues.GAUSS_GRAD:
            result = _gauss_grad_vertex(mesh, normals, vertex)
        elif method == MethodValues.TAUBIN_AREA:
            result = taubin_estimate(
                mesh, vertex, WeightSchemeValues.AREA, normal
            )
        elif method == MethodValues.TAUBIN_CENTROID:
            result = taubin_estimate(
                mesh, vertex, WeightSchemeValues.CENTROID, normal
            )
        else:
            result = chen_schmitt_estimate(mesh, vertex, normal)
    except (ValueError, ArithmeticError) as error:
        logger.debug(f'degraded {method.value} estimate at vertex {vertex}: '
                     f'{error}')
        if not np.all(np.isfinite(normal)):
            normal = None
        return CurvatureResult.degraded_result(
            vertex, method, boundary, normal
        )
    values = (result.gaussian, result.mean, result.kappa1, result.kappa2)
    if not result.degraded and not np.all(np.isfinite(values)):
        logger.debug(f'non-finite {method.value} estimate at vertex {vertex}')
        return CurvatureResult.degraded_result(
            vertex, method, boundary, normal
        )
    return result


def estimate_curvatures(
    mesh: TriMesh,
    method: Union[MethodValues, str] = MethodValues.GAUSS_GRAD,
    vertices: Optional[Sequence[int]] = None,
    num_threads: Optional[int] = None
) -> List[CurvatureResult]:
    """Estimates curvatures at the vertices of a mesh.

    Vertices at which the estimate fails (for example because the weighted
    face normals cancel out or too few neighbors exist) are flagged degraded
    and carry ``nan`` values instead of aborting the whole mesh.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Consistently oriented triangle mesh; the winding determines the sign
        of the mean and principal curvatures
    method: Union[meshcurv.enum.MethodValues, str], optional
        Estimation method
    vertices: Sequence[int], optional
        Vertices at which curvatures are estimated. Defaults to all vertices.
    num_threads: int, optional
        Number of worker threads. Defaults to the value of the
        ``MESHCURV_NUM_THREADS`` environment variable or the number of CPUs.

    Returns
    -------
    List[meshcurv.content.CurvatureResult]
        One result per vertex in the order of `vertices`

    Raises
    ------
    meshcurv.errors.EmptyMesh
        When the mesh has no vertices or no faces.
    IndexError
        When a requested vertex does not exist.

    Examples
    --------
    >>> from meshcurv.gauss import estimate_curvatures
    >>> from meshcurv.shapes import icosphere
    >>> results = estimate_curvatures(icosphere(3), 'gauss-grad')
    >>> results[0].degraded
    False

    """
    if mesh.n_vertices == 0 or mesh.n_faces == 0:
        raise EmptyMesh('Curvatures cannot be estimated on an empty mesh.')
    method = MethodValues(method)
    if vertices is None:
        selected = list(range(mesh.n_vertices))
    else:
        selected = [int(v) for v in vertices]
        for v in selected:
            mesh.star(v)

    if method == MethodValues.GAUSS_GRAD:
        required = sorted({
            w for v in selected for w in (v, ) + mesh.neighbors(v)
        })
    else:
        required = sorted(set(selected))
    logger.debug(
        f'estimate {method.value} curvatures at {len(selected)} vertices'
    )
    normals, failures = _normal_field(mesh, required, num_threads)
    if failures:
        logger.debug(f'vertex normals undefined at {len(failures)} vertices')
    results = parallel_map(
        partial(_estimate_vertex, mesh, method, normals),
        selected,
        num_threads
    )
    n_degraded = sum(r.degraded for r in results)
    if n_degraded > 0:
        logger.warning(
            f'{method.value} estimate degraded at {n_degraded} of '
            f'{len(results)} vertices'
        )
    return results

"""Curvature estimators based on normal curvatures along mesh edges.

Both estimators sample the normal curvature towards every neighbor of a
vertex from the chord to that neighbor. Taubin's method integrates the
samples into a symmetric matrix whose tangent eigenvalues determine the
principal curvatures; Chen and Schmitt's method fits the Euler formula to the
samples by least squares.

"""
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from meshcurv.calculus import centroid_weights, vertex_normal
from meshcurv.content import (
    CurvatureResult,
    EulerFit,
    NeighborSample,
    TaubinMatrix,
)
from meshcurv.enum import MethodValues, WeightSchemeValues
from meshcurv.errors import (
    DegenerateProjection,
    NonUnitNormal,
    RankDeficientFit,
    TooFewNeighbors,
)
from meshcurv.mesh import TriMesh
from meshcurv.spatial import UNIT_TOLERANCE, tangent_basis
from meshcurv.utils import canonical_sign, is_umbilic, symmetric_eigen_2x2


logger = logging.getLogger(__name__)


MIN_SAMPLES = 3

PROJECTION_TOLERANCE = 1e-12
"""Relative length below which a projected edge is considered zero."""

MAX_CONDITION_NUMBER = 1e12


def euler_normal_curvature(
    kappa1: float,
    kappa2: float,
    theta: float
) -> float:
    """Evaluates the Euler formula.

    Parameters
    ----------
    kappa1: float
        First principal curvature
    kappa2: float
        Second principal curvature
    theta: float
        Angle between the tangent direction and the first principal direction
        in radians

    Returns
    -------
    float
        Normal curvature ``kappa1 cos^2(theta) + kappa2 sin^2(theta)``

    """
    return float(
        kappa1 * np.cos(theta) ** 2 + kappa2 * np.sin(theta) ** 2
    )


def _unit_normal(
    mesh: TriMesh,
    vertex: int,
    normal: Optional[Sequence[float]]
) -> np.ndarray:
    if normal is None:
        return vertex_normal(mesh, vertex)
    n = np.asarray(normal, dtype=np.float64)
    if not abs(np.linalg.norm(n) - 1.0) <= UNIT_TOLERANCE:
        raise NonUnitNormal('Argument "normal" must have unit length.')
    return n


def neighbor_samples(
    mesh: TriMesh,
    vertex: int,
    normal: Optional[Sequence[float]] = None,
    weight_scheme: Union[WeightSchemeValues, str] = WeightSchemeValues.AREA
) -> List[NeighborSample]:
    """Samples normal curvatures towards the neighbors of a vertex.

    For a neighbor ``v_i`` of ``v`` the tangent direction is the normalized
    projection of ``v_i - v`` onto the tangent plane and the normal
    curvature is estimated as ``2 <v_i - v, N> / ||v_i - v||^2``, the
    curvature of the circle through both vertices that is tangent to the
    plane at ``v``.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index
    normal: Sequence[float], optional
        Unit normal at the vertex. Defaults to the centroid-weighted vertex
        normal.
    weight_scheme: Union[meshcurv.enum.WeightSchemeValues, str], optional
        Whether a neighbor is weighted by the areas or by the centroid
        weights of the faces shared with the vertex

    Returns
    -------
    List[meshcurv.content.NeighborSample]
        One sample per neighbor, in neighbor order, with weights summing to
        one

    Raises
    ------
    meshcurv.errors.IsolatedVertex
        When no face contains `vertex`.
    meshcurv.errors.NonUnitNormal
        When `normal` does not have unit length.
    meshcurv.errors.DegenerateProjection
        When a neighbor lies on the normal line through the vertex.

    """
    weight_scheme = WeightSchemeValues(weight_scheme)
    n = _unit_normal(mesh, vertex, normal)
    star = mesh.star(vertex)
    origin = mesh.vertices[vertex]

    if weight_scheme == WeightSchemeValues.CENTROID:
        weights = centroid_weights(mesh, vertex)
        face_weights = dict(zip(weights.faces, weights.weights))
    else:
        face_weights = {
            f: float(mesh.face_areas[f]) for f in star.incident_faces
        }

    tangents = []
    curvatures = []
    raw_weights = []
    for neighbor in star.neighbors:
        edge = mesh.vertices[neighbor] - origin
        height = float(np.dot(edge, n))
        projection = edge - height * n
        length = np.linalg.norm(projection)
        edge_length = np.linalg.norm(edge)
        if not length >= PROJECTION_TOLERANCE * edge_length:
            raise DegenerateProjection(
                f'Neighbor {neighbor} of vertex {vertex} projects onto the '
                'vertex in the tangent plane.',
                vertex=vertex,
                neighbor=neighbor
            )
        tangents.append(projection / length)
        curvatures.append(2.0 * height / edge_length ** 2)
        raw_weights.append(
            sum(face_weights[f] for f in mesh.shared_faces(vertex, neighbor))
        )

    total = sum(raw_weights)
    return [
        NeighborSample(
            t=t,
            kn=kn,
            weight=w / total,
            neighbor=int(neighbor)
        )
        for t, kn, w, neighbor in zip(
            tangents, curvatures, raw_weights, star.neighbors
        )
    ]


def taubin_from_samples(
    samples: Sequence[NeighborSample],
    normal: Sequence[float]
) -> TaubinMatrix:
    """Integrates normal curvature samples into Taubin's matrix.

    Parameters
    ----------
    samples: Sequence[meshcurv.content.NeighborSample]
        Normal curvature samples around a vertex
    normal: Sequence[float]
        Unit normal at the vertex

    Returns
    -------
    meshcurv.content.TaubinMatrix
        Matrix ``sum(w kn t t^T)`` with its tangent eigen decomposition

    Raises
    ------
    meshcurv.errors.TooFewNeighbors
        When fewer than three samples are given.
    meshcurv.errors.NonUnitNormal
        When `normal` does not have unit length.

    """
    if len(samples) < MIN_SAMPLES:
        raise TooFewNeighbors(
            f'At least {MIN_SAMPLES} samples are required, '
            f'got {len(samples)}.',
            count=len(samples)
        )
    basis = tangent_basis(normal)
    b = np.zeros((3, 3))
    for sample in samples:
        b += sample.weight * sample.kn * np.outer(sample.t, sample.t)
    b = 0.5 * (b + b.T)
    block = basis.matrix.T @ b @ basis.matrix
    eigenvalues, eigenvectors = symmetric_eigen_2x2(block)
    norm = np.linalg.norm(b)
    if norm > 0.0:
        residual = float(np.linalg.norm(b @ basis.n) / norm)
    else:
        residual = 0.0
    return TaubinMatrix(
        b=b,
        m1=float(eigenvalues[0]),
        m2=float(eigenvalues[1]),
        v1=basis.to_ambient(eigenvectors[:, 0]),
        v2=basis.to_ambient(eigenvectors[:, 1]),
        residual=residual
    )


def taubin_estimate(
    mesh: TriMesh,
    vertex: int,
    weight_scheme: Union[WeightSchemeValues, str] = WeightSchemeValues.AREA,
    normal: Optional[Sequence[float]] = None
) -> CurvatureResult:
    """Estimates curvatures at a vertex with Taubin's integral method.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index
    weight_scheme: Union[meshcurv.enum.WeightSchemeValues, str], optional
        Weights of the neighbor samples, ``"area"`` for the original method
        and ``"centroid"`` for the centroid-weight variant
    normal: Sequence[float], optional
        Unit normal at the vertex. Defaults to the centroid-weighted vertex
        normal.

    Returns
    -------
    meshcurv.content.CurvatureResult
        Estimate tagged ``taubin-area`` or ``taubin-centroid``; flagged
        degraded when a neighbor projects onto the vertex

    Raises
    ------
    meshcurv.errors.TooFewNeighbors
        When the vertex has fewer than three neighbors.

    """
    weight_scheme = WeightSchemeValues(weight_scheme)
    if weight_scheme == WeightSchemeValues.CENTROID:
        method = MethodValues.TAUBIN_CENTROID
    else:
        method = MethodValues.TAUBIN_AREA
    n = _unit_normal(mesh, vertex, normal)
    boundary = mesh.is_boundary(vertex)
    try:
        samples = neighbor_samples(mesh, vertex, n, weight_scheme)
    except DegenerateProjection as error:
        logger.debug(f'degraded estimate at vertex {vertex}: {error}')
        return CurvatureResult.degraded_result(vertex, method, boundary, n)
    if len(samples) < MIN_SAMPLES:
        raise TooFewNeighbors(
            f'Vertex {vertex} has {len(samples)} neighbors, at least '
            f'{MIN_SAMPLES} are required.',
            count=len(samples),
            vertex=vertex
        )
    matrix = taubin_from_samples(samples, n)
    kappa1, kappa2 = matrix.principal_curvatures()
    return CurvatureResult(
        vertex=vertex,
        method=method,
        gaussian=kappa1 * kappa2,
        mean=0.5 * (kappa1 + kappa2),
        kappa1=kappa1,
        kappa2=kappa2,
        dir1=canonical_sign(matrix.v1),
        dir2=canonical_sign(matrix.v2),
        normal=n,
        boundary=boundary,
        degraded=False,
        indeterminate_directions=is_umbilic(kappa1, kappa2),
    )


def fit_normal_curvatures(
    angles: Sequence[float],
    kn: Sequence[float],
    frame: Optional[Tuple[np.ndarray, np.ndarray]] = None
) -> EulerFit:
    """Fits the Euler formula to normal curvature samples.

    Finds the coefficients minimizing the sum of squares of
    ``C1 cos^2(theta_i) + C2 cos(theta_i) sin(theta_i) + C3 sin^2(theta_i)
    - kn_i`` by solving the normal equations.

    Parameters
    ----------
    angles: Sequence[float]
        Angle of each sample direction measured from `r1` towards `r2`
    kn: Sequence[float]
        Normal curvature of each sample
    frame: Tuple[numpy.ndarray, numpy.ndarray], optional
        Orthonormal tangent vectors ``(r1, r2)``. Defaults to the x and y
        axes.

    Returns
    -------
    meshcurv.content.EulerFit
        Fitted coefficients and the angle of the first principal direction

    Raises
    ------
    ValueError
        When `angles` and `kn` differ in length.
    meshcurv.errors.TooFewNeighbors
        When fewer than three samples are given.
    meshcurv.errors.RankDeficientFit
        When the normal equations are ill-conditioned, which happens when
        the angles take fewer than three distinct values modulo pi.

    """
    theta = np.asarray(angles, dtype=np.float64)
    values = np.asarray(kn, dtype=np.float64)
    if theta.shape != values.shape or theta.ndim != 1:
        raise ValueError(
            'Arguments "angles" and "kn" must be sequences of equal length.'
        )
    if len(theta) < MIN_SAMPLES:
        raise TooFewNeighbors(
            f'At least {MIN_SAMPLES} samples are required, '
            f'got {len(theta)}.',
            count=len(theta)
        )
    if frame is None:
        frame = (np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]))
    c, s = np.cos(theta), np.sin(theta)
    design = np.column_stack([c * c, c * s, s * s])
    normal_matrix = design.T @ design
    condition_number = float(np.linalg.cond(normal_matrix))
    if not condition_number <= MAX_CONDITION_NUMBER:
        raise RankDeficientFit(
            'Normal equations of the Euler formula fit are ill-conditioned '
            f'(condition number {condition_number:.3g}).',
            condition_number=condition_number
        )
    coefficients = np.linalg.solve(normal_matrix, design.T @ values)
    residuals = design @ coefficients - values
    c1, c2, c3 = (float(x) for x in coefficients)
    return EulerFit(
        c1=c1,
        c2=c2,
        c3=c3,
        theta0=float(0.5 * np.arctan2(c2, c1 - c3)),
        frame=frame,
        residual=float(residuals @ residuals)
    )


def chen_schmitt_estimate(
    mesh: TriMesh,
    vertex: int,
    normal: Optional[Sequence[float]] = None
) -> CurvatureResult:
    """Estimates curvatures at a vertex with Chen and Schmitt's least squares
    method.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Triangle mesh
    vertex: int
        Vertex index
    normal: Sequence[float], optional
        Unit normal at the vertex. Defaults to the centroid-weighted vertex
        normal.

    Returns
    -------
    meshcurv.content.CurvatureResult
        Estimate tagged ``chen-schmitt``; flagged degraded when a neighbor
        projects onto the vertex

    Raises
    ------
    meshcurv.errors.TooFewNeighbors
        When the vertex has fewer than three neighbors.
    meshcurv.errors.RankDeficientFit
        When the neighbor directions do not determine the fit.

    Note
    ----
    Sample angles are measured from the first tangent basis vector `r1`
    towards `r2`. The first principal direction is ``cos(theta0) r1 +
    sin(theta0) r2``, i.e. the basis rotated by `theta0`, and the second
    one is perpendicular to it within the tangent plane.

    """
    method = MethodValues.CHEN_SCHMITT
    n = _unit_normal(mesh, vertex, normal)
    boundary = mesh.is_boundary(vertex)
    try:
        samples = neighbor_samples(mesh, vertex, n)
    except DegenerateProjection as error:
        logger.debug(f'degraded estimate at vertex {vertex}: {error}')
        return CurvatureResult.degraded_result(vertex, method, boundary, n)
    if len(samples) < MIN_SAMPLES:
        raise TooFewNeighbors(
            f'Vertex {vertex} has {len(samples)} neighbors, at least '
            f'{MIN_SAMPLES} are required.',
            count=len(samples),
            vertex=vertex
        )
    basis = tangent_basis(n)
    angles = [
        np.arctan2(np.dot(s.t, basis.e2), np.dot(s.t, basis.e1))
        for s in samples
    ]
    fit = fit_normal_curvatures(
        angles,
        [s.kn for s in samples],
        frame=(basis.e1, basis.e2)
    )
    kappa1, kappa2 = fit.principal_curvatures()
    dir1, dir2 = fit.principal_directions()
    return CurvatureResult(
        vertex=vertex,
        method=method,
        gaussian=kappa1 * kappa2,
        mean=0.5 * (kappa1 + kappa2),
        kappa1=kappa1,
        kappa2=kappa2,
        dir1=canonical_sign(dir1),
        dir2=canonical_sign(dir2),
        normal=n,
        boundary=boundary,
        degraded=False,
        indeterminate_directions=is_umbilic(kappa1, kappa2),
    )

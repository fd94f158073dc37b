"""Value types shared by the curvature estimators."""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from meshcurv.enum import MethodValues


@dataclass(frozen=True)
class TangentBasis:

    """Right-handed orthonormal frame ``(e1, e2, n)`` at a vertex, where `n`
    is the vertex normal and `e1`, `e2` span the tangent plane.

    """

    e1: np.ndarray
    e2: np.ndarray
    n: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """numpy.ndarray: 3 x 2 matrix with columns `e1` and `e2`"""
        return np.column_stack([self.e1, self.e2])

    def to_ambient(self, coordinates: np.ndarray) -> np.ndarray:
        """Maps tangent plane coordinates ``(x, y)`` to ``x e1 + y e2``."""
        return self.matrix @ np.asarray(coordinates, dtype=np.float64)

    def coordinates(self, vector: np.ndarray) -> np.ndarray:
        """Projects a vector onto the tangent plane coordinates."""
        return self.matrix.T @ np.asarray(vector, dtype=np.float64)


@dataclass(frozen=True)
class ShapeOperator2:

    """Differential of the Gauss map as a 2 x 2 matrix in a tangent basis.

    Attributes
    ----------
    a: numpy.ndarray
        Matrix with entries ``a[i, j] = <e_i, dN(e_j)>``
    basis: meshcurv.content.TangentBasis
        Tangent basis in which `a` is expressed
    symmetrized: bool
        Whether `a` was replaced by its symmetric part
    asymmetry: float
        ``|a_12 - a_21|`` of the matrix before symmetrization

    """

    a: np.ndarray
    basis: TangentBasis
    symmetrized: bool
    asymmetry: float


@dataclass(frozen=True)
class CurvatureResult:

    """Curvature estimate at a vertex.

    Principal curvatures are ordered ``kappa1 >= kappa2``; `dir1` and `dir2`
    are the corresponding unit principal directions. With outward normals,
    the unit sphere has ``kappa1 = kappa2 = -1`` and ``mean = -1``.
    Degraded vertices carry ``nan`` in all numeric fields.

    """

    vertex: int
    method: MethodValues
    gaussian: float
    mean: float
    kappa1: float
    kappa2: float
    dir1: np.ndarray
    dir2: np.ndarray
    normal: np.ndarray
    boundary: bool = False
    degraded: bool = False
    indeterminate_directions: bool = False
    asymmetry: float = 0.0

    @classmethod
    def degraded_result(
        cls,
        vertex: int,
        method: MethodValues,
        boundary: bool,
        normal: Optional[np.ndarray] = None
    ) -> 'CurvatureResult':
        """Creates a result for a vertex whose estimate failed."""
        nan_vector = np.full(3, np.nan)
        return cls(
            vertex=vertex,
            method=method,
            gaussian=np.nan,
            mean=np.nan,
            kappa1=np.nan,
            kappa2=np.nan,
            dir1=nan_vector,
            dir2=nan_vector.copy(),
            normal=nan_vector.copy() if normal is None else normal,
            boundary=boundary,
            degraded=True,
            indeterminate_directions=True,
            asymmetry=np.nan,
        )


@dataclass(frozen=True)
class NeighborSample:

    """Normal curvature sample towards one neighbor of a vertex.

    Attributes
    ----------
    t: numpy.ndarray
        Unit tangent vector pointing towards the projected neighbor
    kn: float
        Estimated normal curvature along `t`
    weight: float
        Non-negative weight, normalized over the samples of a vertex
    neighbor: int
        Index of the neighbor vertex

    """

    t: np.ndarray
    kn: float
    weight: float
    neighbor: int


@dataclass(frozen=True)
class TaubinMatrix:

    """Discrete integral of normal curvatures and its tangent eigenvalues.

    Attributes
    ----------
    b: numpy.ndarray
        Symmetric 3 x 3 matrix, the weighted sum of ``kn t t^T``
    m1: float
        Larger eigenvalue of `b` restricted to the tangent plane
    m2: float
        Smaller eigenvalue of `b` restricted to the tangent plane
    v1: numpy.ndarray
        Unit tangent eigenvector of `m1`
    v2: numpy.ndarray
        Unit tangent eigenvector of `m2`
    residual: float
        ``||b n|| / ||b||_F``, zero for an exactly tangent matrix

    """

    b: np.ndarray
    m1: float
    m2: float
    v1: np.ndarray
    v2: np.ndarray
    residual: float

    def principal_curvatures(self) -> Tuple[float, float]:
        """Tuple[float, float]: ``(3 m1 - m2, 3 m2 - m1)``"""
        return (3.0 * self.m1 - self.m2, 3.0 * self.m2 - self.m1)


@dataclass(frozen=True)
class EulerFit:

    """Least squares fit of ``C1 cos^2 + C2 cos sin + C3 sin^2`` to normal
    curvature samples.

    Attributes
    ----------
    c1: float
        Coefficient of ``cos^2(theta)``
    c2: float
        Coefficient of ``cos(theta) sin(theta)``
    c3: float
        Coefficient of ``sin^2(theta)``
    theta0: float
        Angle of the first principal direction measured from `r1` towards
        `r2`, in radians
    frame: Tuple[numpy.ndarray, numpy.ndarray]
        Orthonormal tangent vectors ``(r1, r2)`` the angles refer to
    residual: float
        Sum of squared residuals of the fit

    """

    c1: float
    c2: float
    c3: float
    theta0: float
    frame: Tuple[np.ndarray, np.ndarray]
    residual: float

    def principal_curvatures(self) -> Tuple[float, float]:
        """Solves the Euler relations for the principal curvatures.

        Returns
        -------
        Tuple[float, float]
            ``(kappa1, kappa2)`` with ``kappa1 >= kappa2``

        """
        total = self.c1 + self.c3
        difference = float(np.hypot(self.c1 - self.c3, self.c2))
        return (0.5 * (total + difference), 0.5 * (total - difference))

    def principal_directions(self) -> Tuple[np.ndarray, np.ndarray]:
        """Rotates the frame onto the principal directions.

        Returns
        -------
        Tuple[numpy.ndarray, numpy.ndarray]
            Unit directions of `kappa1` and `kappa2`

        """
        r1, r2 = self.frame
        c, s = np.cos(self.theta0), np.sin(self.theta0)
        return (c * r1 + s * r2, -s * r1 + c * r2)

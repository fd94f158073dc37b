from typing import Sequence

import numpy as np

from meshcurv.content import TangentBasis
from meshcurv.errors import NonUnitNormal


UNIT_TOLERANCE = 1e-9


def create_rotation_matrix(
    axis: Sequence[float],
    angle: float,
) -> np.ndarray:
    """Builds a rotation matrix.

    Parameters
    ----------
    axis: Sequence[float]
        Rotation axis (need not be normalized)
    angle: float
        Counterclockwise rotation angle about `axis` in radians

    Returns
    -------
    numpy.ndarray
        3 x 3 rotation matrix

    Raises
    ------
    ValueError
        When `axis` does not have length 3 or is the zero vector.

    """
    if len(axis) != 3:
        raise ValueError('Argument "axis" must have length 3.')
    direction = np.array(axis, dtype=float)
    length = np.linalg.norm(direction)
    if length == 0.0:
        raise ValueError('Argument "axis" must not be the zero vector.')
    x, y, z = direction / length
    cross_product_matrix = np.array([
        [0.0, -z, y],
        [z, 0.0, -x],
        [-y, x, 0.0],
    ])
    return (
        np.eye(3) +
        np.sin(angle) * cross_product_matrix +
        (1.0 - np.cos(angle)) * cross_product_matrix @ cross_product_matrix
    )


def tangent_basis(normal: Sequence[float]) -> TangentBasis:
    """Builds a right-handed orthonormal tangent frame for a unit normal.

    The first tangent vector is the coordinate axis along which `normal` has
    the smallest absolute component, orthogonalized against `normal`; the
    second is ``normal x e1``. The choice is deterministic and
    well-conditioned for every direction.

    Parameters
    ----------
    normal: Sequence[float]
        Unit normal vector

    Returns
    -------
    meshcurv.content.TangentBasis
        Frame with ``e1 x e2 = normal``

    Raises
    ------
    ValueError
        When `normal` does not have length 3.
    meshcurv.errors.NonUnitNormal
        When `normal` does not have unit length.

    """
    n = np.array(normal, dtype=float).reshape(-1)
    if n.shape != (3, ):
        raise ValueError('Argument "normal" must have length 3.')
    length = np.linalg.norm(n)
    if not abs(length - 1.0) <= UNIT_TOLERANCE:
        raise NonUnitNormal(
            f'Argument "normal" must have unit length, got length {length}.'
        )
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(n)))] = 1.0
    e1 = axis - np.dot(axis, n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    e2 /= np.linalg.norm(e2)
    return TangentBasis(e1=e1, e2=e2, n=n)

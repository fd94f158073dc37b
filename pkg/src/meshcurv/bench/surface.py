"""Random test surfaces, fan partitions and their exact curvatures."""
import logging
from typing import Tuple

import numpy as np

from meshcurv.bench.content import AnalyticCurvature, FanSpec, PolySurface
from meshcurv.errors import RetryExhausted
from meshcurv.mesh import TriMesh
from meshcurv.shapes import fan_mesh


logger = logging.getLogger(__name__)


MAX_GAP = 1.9 * np.pi

DUPLICATE_ANGLE_TOLERANCE = 1e-9

RELATIVE_ERROR_EPSILON = 1e-8

MAX_FAN_ATTEMPTS = 1000


def random_surface(
    rng: np.random.Generator,
    degree_range: Tuple[int, int] = (2, 3),
    coeff_bound: float = 5.0
) -> PolySurface:
    """Draws a random polynomial surface.

    Parameters
    ----------
    rng: numpy.random.Generator
        Source of randomness
    degree_range: Tuple[int, int], optional
        Inclusive range from which the degrees in `u` and `v` are drawn
        uniformly
    coeff_bound: float, optional
        Coefficients are drawn uniformly from ``[-coeff_bound, coeff_bound]``

    Returns
    -------
    meshcurv.bench.content.PolySurface
        Random surface

    """
    low, high = degree_range
    if not 0 <= low <= high:
        raise ValueError('Argument "degree_range" must be a valid range.')
    if not coeff_bound >= 0.0:
        raise ValueError('Argument "coeff_bound" must not be negative.')
    degree_u = int(rng.integers(low, high + 1))
    degree_v = int(rng.integers(low, high + 1))
    coefficients = rng.uniform(
        -coeff_bound,
        coeff_bound,
        size=(degree_u + 1, degree_v + 1)
    )
    return PolySurface(coefficients, coefficient_bound=coeff_bound)


def is_valid_partition(angles: np.ndarray) -> bool:
    """Checks whether sorted angles partition the circle into admissible
    gaps.

    Parameters
    ----------
    angles: numpy.ndarray
        Sorted angles in ``[0, 2 pi)``

    Returns
    -------
    bool
        Whether no two angles coincide within ``1e-9`` and every gap,
        including the one wrapping around, is below ``1.9 pi``

    """
    gaps = np.append(
        np.diff(angles),
        2.0 * np.pi - angles[-1] + angles[0]
    )
    return bool(
        np.all(gaps > DUPLICATE_ANGLE_TOLERANCE) and np.all(gaps < MAX_GAP)
    )


def random_fan(
    rng: np.random.Generator,
    valence_range: Tuple[int, int] = (5, 9),
    radius_range: Tuple[float, float] = (0.05, 0.15),
    max_attempts: int = MAX_FAN_ATTEMPTS
) -> FanSpec:
    """Draws a random fan partition of the circle.

    The number of ring vertices is drawn first; angles are then drawn
    uniformly and sorted until they form a valid partition (see
    ``is_valid_partition()``). Radii are drawn uniformly afterwards.

    Parameters
    ----------
    rng: numpy.random.Generator
        Source of randomness
    valence_range: Tuple[int, int], optional
        Inclusive range of the number of ring vertices
    radius_range: Tuple[float, float], optional
        Range of the ring radii
    max_attempts: int, optional
        Maximum number of angle draws

    Returns
    -------
    meshcurv.bench.content.FanSpec
        Random fan

    Raises
    ------
    meshcurv.errors.RetryExhausted
        When no valid partition was drawn within `max_attempts` draws.

    """
    low, high = valence_range
    if not 3 <= low <= high:
        raise ValueError('Argument "valence_range" must be a valid range.')
    if not 0.0 < radius_range[0] <= radius_range[1]:
        raise ValueError('Argument "radius_range" must be a valid range.')
    valence = int(rng.integers(low, high + 1))
    for attempt in range(1, max_attempts + 1):
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=valence))
        if is_valid_partition(angles):
            break
        logger.debug(f'redraw fan angles after attempt {attempt}')
    else:
        raise RetryExhausted(
            f'No valid fan partition after {max_attempts} attempts.',
            attempts=max_attempts
        )
    radii = rng.uniform(radius_range[0], radius_range[1], size=valence)
    return FanSpec(angles=angles, radii=radii)


def build_fan_mesh(
    surface: PolySurface,
    fan: FanSpec,
    outer_ring: bool = False
) -> Tuple[TriMesh, int]:
    """Triangulates a fan on a surface.

    Parameters
    ----------
    surface: meshcurv.bench.content.PolySurface
        Surface on which the ring vertices are placed
    fan: meshcurv.bench.content.FanSpec
        Polar coordinates of the ring vertices
    outer_ring: bool, optional
        Whether to add a second ring of surface samples around the fan (see
        ``meshcurv.shapes.fan_mesh()``)

    Returns
    -------
    Tuple[meshcurv.mesh.TriMesh, int]
        Fan mesh and the index of its center vertex ``(0, 0, f(0, 0))``

    Raises
    ------
    meshcurv.errors.DegenerateFace
        When a face of the fan has zero area.

    """
    return fan_mesh(fan.angles, fan.radii, surface, outer_ring), 0


def analytic_curvature(
    surface: PolySurface,
    u: float,
    v: float
) -> AnalyticCurvature:
    """Computes exact curvatures of a polynomial surface.

    Parameters
    ----------
    surface: meshcurv.bench.content.PolySurface
        Monge patch ``z = f(u, v)``
    u: float
        First parameter
    v: float
        Second parameter

    Returns
    -------
    meshcurv.bench.content.AnalyticCurvature
        Curvatures with respect to the upward normal

    Note
    ----
    With ``W = sqrt(1 + f_u^2 + f_v^2)`` the Gaussian curvature is
    ``(f_uu f_vv - f_uv^2) / W^4`` and the mean curvature is
    ``((1 + f_v^2) f_uu - 2 f_u f_v f_uv + (1 + f_u^2) f_vv) / (2 W^3)``.

    """
    f_u = float(surface.derivative(1, 0)(u, v))
    f_v = float(surface.derivative(0, 1)(u, v))
    f_uu = float(surface.derivative(2, 0)(u, v))
    f_uv = float(surface.derivative(1, 1)(u, v))
    f_vv = float(surface.derivative(0, 2)(u, v))
    w_squared = 1.0 + f_u ** 2 + f_v ** 2
    w = np.sqrt(w_squared)
    gaussian = (f_uu * f_vv - f_uv ** 2) / w_squared ** 2
    mean = (
        (1.0 + f_v ** 2) * f_uu -
        2.0 * f_u * f_v * f_uv +
        (1.0 + f_u ** 2) * f_vv
    ) / (2.0 * w_squared * w)
    root = np.sqrt(max(mean ** 2 - gaussian, 0.0))
    return AnalyticCurvature(
        gaussian=float(gaussian),
        mean=float(mean),
        kappa1=float(mean + root),
        kappa2=float(mean - root),
        normal=np.array([-f_u, -f_v, 1.0]) / w,
    )


def finite_difference_curvature(
    surface: PolySurface,
    u: float,
    v: float,
    step: float = 1e-5
) -> Tuple[float, float]:
    """Approximates curvatures from finite-difference fundamental forms.

    Tangent vectors and the derivatives of the upward unit normal are
    approximated by central differences.

    Parameters
    ----------
    surface: meshcurv.bench.content.PolySurface
        Monge patch ``z = f(u, v)``
    u: float
        First parameter
    v: float
        Second parameter
    step: float, optional
        Difference step

    Returns
    -------
    Tuple[float, float]
        Gaussian and mean curvature

    """
    def position(a: float, b: float) -> np.ndarray:
        return np.array([a, b, float(surface(a, b))])

    def tangents(a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
        x_u = (position(a + step, b) - position(a - step, b)) / (2 * step)
        x_v = (position(a, b + step) - position(a, b - step)) / (2 * step)
        return x_u, x_v

    def normal(a: float, b: float) -> np.ndarray:
        x_u, x_v = tangents(a, b)
        n = np.cross(x_u, x_v)
        return n / np.linalg.norm(n)

    x_u, x_v = tangents(u, v)
    n_u = (normal(u + step, v) - normal(u - step, v)) / (2 * step)
    n_v = (normal(u, v + step) - normal(u, v - step)) / (2 * step)
    e = x_u @ x_u
    f = x_u @ x_v
    g = x_v @ x_v
    l_ = -(n_u @ x_u)
    m = -0.5 * (n_u @ x_v + n_v @ x_u)
    n_ = -(n_v @ x_v)
    determinant = e * g - f ** 2
    gaussian = (l_ * n_ - m ** 2) / determinant
    mean = (e * n_ - 2.0 * f * m + g * l_) / (2.0 * determinant)
    return float(gaussian), float(mean)


def relative_error(
    true_value: float,
    estimate: float,
    epsilon: float = RELATIVE_ERROR_EPSILON
) -> float:
    """Computes the relative error of an estimate.

    Parameters
    ----------
    true_value: float
        Exact value
    estimate: float
        Estimated value
    epsilon: float, optional
        Lower bound of the denominator

    Returns
    -------
    float
        ``|true_value - estimate| / max(|true_value|, epsilon)``

    Examples
    --------
    >>> from meshcurv.bench.surface import relative_error
    >>> round(relative_error(4.0, 3.8), 12)
    0.05

    """
    return abs(true_value - estimate) / max(abs(true_value), epsilon)

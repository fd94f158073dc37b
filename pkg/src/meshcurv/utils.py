import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

import numpy as np


logger = logging.getLogger(__name__)


NUM_THREADS_ENV_VARIABLE = 'MESHCURV_NUM_THREADS'

UMBILIC_TOLERANCE = 1e-9

T = TypeVar('T')
R = TypeVar('R')


def symmetric_eigen_2x2(
    matrix: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Computes eigenvalues and eigenvectors of a symmetric 2 x 2 matrix in
    closed form.

    Parameters
    ----------
    matrix: numpy.ndarray
        Symmetric 2 x 2 matrix (only the upper triangle is read)

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        Eigenvalues in descending order and the matrix whose columns are the
        corresponding unit eigenvectors

    Raises
    ------
    ValueError
        When `matrix` does not have shape ``(2, 2)``.

    """
    if matrix.shape != (2, 2):
        raise ValueError('Argument "matrix" must have shape [2, 2].')
    a = float(matrix[0, 0])
    b = float(matrix[0, 1])
    d = float(matrix[1, 1])
    center = 0.5 * (a + d)
    radius = float(np.hypot(0.5 * (a - d), b))
    phi = 0.5 * np.arctan2(2.0 * b, a - d)
    c, s = np.cos(phi), np.sin(phi)
    eigenvalues = np.array([center + radius, center - radius])
    eigenvectors = np.array([
        [c, -s],
        [s, c],
    ])
    return eigenvalues, eigenvectors


def canonical_sign(vector: np.ndarray) -> np.ndarray:
    """Flips a direction so that its largest-magnitude component is positive.

    Parameters
    ----------
    vector: numpy.ndarray
        Direction vector

    Returns
    -------
    numpy.ndarray
        `vector` or ``-vector``

    """
    if vector[int(np.argmax(np.abs(vector)))] < 0.0:
        return -vector
    return vector


def resolve_num_threads(num_threads: Optional[int] = None) -> int:
    """Determines the number of worker threads.

    Parameters
    ----------
    num_threads: int, optional
        Requested number of threads. When omitted, the value of the
        ``MESHCURV_NUM_THREADS`` environment variable is used, falling back to
        the number of CPUs.

    Returns
    -------
    int
        Positive number of threads

    Raises
    ------
    ValueError
        When the requested or configured number is not a positive integer.

    """
    if num_threads is None:
        configured = os.environ.get(NUM_THREADS_ENV_VARIABLE)
        if configured:
            try:
                num_threads = int(configured)
            except ValueError:
                raise ValueError(
                    f'Environment variable {NUM_THREADS_ENV_VARIABLE} must '
                    f'be an integer, got "{configured}".'
                )
        else:
            num_threads = os.cpu_count() or 1
    if num_threads < 1:
        raise ValueError('Number of threads must be positive.')
    return num_threads


def parallel_map(
    function: Callable[[T], R],
    items: Iterable[T],
    num_threads: Optional[int] = None
) -> List[R]:
    """Applies a function to items, possibly on several threads.

    Results are returned in the order of `items` irrespective of the order in
    which they are computed.

    Parameters
    ----------
    function: Callable
        Pure function of one item
    items: Iterable
        Inputs
    num_threads: int, optional
        Number of worker threads (see ``resolve_num_threads()``)

    Returns
    -------
    List
        ``[function(item) for item in items]``

    """
    num_threads = resolve_num_threads(num_threads)
    if num_threads == 1:
        return [function(item) for item in items]
    logger.debug(f'map over items with {num_threads} threads')
    with ThreadPoolExecutor(max_workers=num_threads) as executor:
        return list(executor.map(function, items))


def is_umbilic(kappa1: float, kappa2: float) -> bool:
    """Checks whether principal curvatures coincide so that principal
    directions are indeterminate.

    Parameters
    ----------
    kappa1: float
        Larger principal curvature
    kappa2: float
        Smaller principal curvature

    Returns
    -------
    bool
        Whether ``|kappa1 - kappa2| < 1e-9 max(1, |kappa1|)``

    """
    return bool(
        abs(kappa1 - kappa2) < UMBILIC_TOLERANCE * max(1.0, abs(kappa1))
    )

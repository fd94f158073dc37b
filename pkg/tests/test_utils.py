import numpy as np
import pytest

from meshcurv.utils import (
    NUM_THREADS_ENV_VARIABLE,
    canonical_sign,
    is_umbilic,
    parallel_map,
    resolve_num_threads,
    symmetric_eigen_2x2,
)


params_symmetric_eigen = [
    pytest.param(
        np.array([[2.0, 0.0], [0.0, 3.0]]),
        (3.0, 2.0),
    ),
    pytest.param(
        np.array([[0.0, 1.0], [1.0, 0.0]]),
        (1.0, -1.0),
    ),
    pytest.param(
        np.array([[4.0, 0.0], [0.0, 4.0]]),
        (4.0, 4.0),
    ),
    pytest.param(
        np.array([[1.5, -0.25], [-0.25, -2.0]]),
        (
            -0.25 + np.hypot(1.75, 0.25),
            -0.25 - np.hypot(1.75, 0.25),
        ),
    ),
]


@pytest.mark.parametrize('matrix,expected_output', params_symmetric_eigen)
def test_symmetric_eigen_2x2(matrix, expected_output):
    eigenvalues, eigenvectors = symmetric_eigen_2x2(matrix)
    np.testing.assert_allclose(eigenvalues, expected_output, atol=1e-14)
    np.testing.assert_allclose(
        eigenvectors.T @ eigenvectors, np.eye(2), atol=1e-14
    )
    for k in range(2):
        np.testing.assert_allclose(
            matrix @ eigenvectors[:, k],
            eigenvalues[k] * eigenvectors[:, k],
            atol=1e-14
        )


def test_symmetric_eigen_2x2_wrong_shape():
    with pytest.raises(ValueError):
        symmetric_eigen_2x2(np.eye(3))


@pytest.mark.parametrize('inputs,expected_output', [
    pytest.param((0.1, -0.9, 0.2), (-0.1, 0.9, -0.2)),
    pytest.param((0.1, 0.9, -0.2), (0.1, 0.9, -0.2)),
    pytest.param((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
])
def test_canonical_sign(inputs, expected_output):
    np.testing.assert_array_equal(
        canonical_sign(np.array(inputs)), expected_output
    )


def test_resolve_num_threads_explicit(monkeypatch):
    monkeypatch.setenv(NUM_THREADS_ENV_VARIABLE, '7')
    assert resolve_num_threads(3) == 3


def test_resolve_num_threads_environment(monkeypatch):
    monkeypatch.setenv(NUM_THREADS_ENV_VARIABLE, '7')
    assert resolve_num_threads() == 7


def test_resolve_num_threads_default(monkeypatch):
    monkeypatch.delenv(NUM_THREADS_ENV_VARIABLE, raising=False)
    monkeypatch.setattr('os.cpu_count', lambda: 5)
    assert resolve_num_threads() == 5


def test_resolve_num_threads_invalid(monkeypatch):
    monkeypatch.setenv(NUM_THREADS_ENV_VARIABLE, 'many')
    with pytest.raises(ValueError):
        resolve_num_threads()
    with pytest.raises(ValueError):
        resolve_num_threads(0)


def test_parallel_map_preserves_order():
    def square(x):
        return x * x

    items = list(range(200))
    assert parallel_map(square, items, num_threads=4) == [
        x * x for x in items
    ]
    assert parallel_map(square, items, num_threads=1) == [
        x * x for x in items
    ]


@pytest.mark.parametrize('inputs,expected_output', [
    pytest.param((1.0, 1.0), True),
    pytest.param((-2.0, -2.0 - 1e-12), True),
    pytest.param((1.0, 1.0 - 1e-6), False),
    pytest.param((1e6, 1e6 - 1e-4), True),
])
def test_is_umbilic(inputs, expected_output):
    assert is_umbilic(*inputs) == expected_output

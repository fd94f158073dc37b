import logging
import unittest

import numpy as np
import pytest

from meshcurv.content import TangentBasis
from meshcurv.enum import MethodValues
from meshcurv.errors import EmptyMesh, IsolatedVertex
from meshcurv.gauss import (
    curvatures_from_shape_operator,
    estimate_curvatures,
    estimate_dN,
    gauss_map_field,
    project_shape_operator,
)
from meshcurv.mesh import TriMesh, flip_orientation, transform_mesh
from meshcurv.shapes import (
    cylinder,
    fan_mesh,
    icosphere,
    monge_grid,
    plane_grid,
)
from meshcurv.spatial import create_rotation_matrix, tangent_basis


def _interior(mesh):
    return [v for v in range(mesh.n_vertices) if not mesh.is_boundary(v)]


def _random_monge_patch(rng, n_vertices=5):
    a, b, c, d = rng.uniform(-1.0, 1.0, size=4)

    def height(u, v):
        return a * u ** 2 + b * v ** 2 + c * u * v + d * u ** 3

    mesh = monge_grid(height, n=7, half_width=0.3)
    chosen = rng.choice(_interior(mesh), size=n_vertices, replace=False)
    return mesh, [int(v) for v in chosen]


def _median_errors(mesh):
    results = estimate_curvatures(mesh, MethodValues.GAUSS_GRAD)
    return (
        np.median([abs(r.gaussian - 1.0) for r in results]),
        np.median([abs(r.mean + 1.0) for r in results]),
    )


def test_gauss_map_field_plane():
    components, normals = gauss_map_field(plane_grid(4))
    np.testing.assert_allclose(
        normals, np.tile([0.0, 0.0, 1.0], (16, 1)), atol=1e-15
    )
    np.testing.assert_allclose(components[2].values, 1.0)
    np.testing.assert_allclose(components[0].values, 0.0, atol=1e-15)
    with pytest.raises(ValueError):
        normals[0, 0] = 1.0


def test_gauss_map_field_sphere(unit_sphere):
    _, normals = gauss_map_field(unit_sphere, num_threads=2)
    distances = np.linalg.norm(normals - unit_sphere.vertices, axis=1)
    assert np.median(distances) < 1e-2
    np.testing.assert_allclose(
        np.linalg.norm(normals, axis=1), 1.0, atol=1e-12
    )


def test_gauss_map_field_cylinder():
    mesh = cylinder(radius=1.0, n_around=16, n_along=5)
    components, _ = gauss_map_field(mesh)
    interior = _interior(mesh)
    assert len(interior) == 48
    np.testing.assert_allclose(
        components[2].values[interior], 0.0, atol=1e-12
    )


def test_gauss_map_field_isolated_vertex():
    mesh = TriMesh(
        [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (5.0, 5.0, 5.0)],
        [(0, 1, 2)]
    )
    with pytest.raises(IsolatedVertex) as error:
        gauss_map_field(mesh)
    assert error.value.vertex == 3


def test_estimate_dN_plane():
    mesh = plane_grid(5)
    np.testing.assert_allclose(
        estimate_dN(mesh, 12), np.zeros((3, 3)), atol=1e-15
    )


def test_estimate_dN_sphere(fine_unit_sphere):
    _, normals = gauss_map_field(fine_unit_sphere)
    distances = []
    for v in range(0, fine_unit_sphere.n_vertices, 7):
        n = normals[v]
        projector = np.eye(3) - np.outer(n, n)
        dN = estimate_dN(fine_unit_sphere, v, normals)
        distances.append(np.linalg.norm(dN - projector))
    assert np.median(distances) < 0.1


def test_estimate_dN_without_normals(unit_sphere):
    _, normals = gauss_map_field(unit_sphere)
    np.testing.assert_allclose(
        estimate_dN(unit_sphere, 5),
        estimate_dN(unit_sphere, 5, normals),
        atol=1e-12
    )


def test_estimate_dN_cylinder():
    radius = 2.0
    n_around, n_along = 48, 9
    mesh = cylinder(
        radius=radius, height=4.0, n_around=n_around, n_along=n_along
    )
    _, normals = gauss_map_field(mesh)
    # Middle ring, two or more rings away from either boundary
    v = (n_along // 2) * n_around
    assert not any(mesh.is_boundary(w) for w in mesh.neighbors(v))
    dN = estimate_dN(mesh, v, normals)
    basis = tangent_basis(normals[v])
    block = basis.matrix.T @ dN @ basis.matrix
    eigenvalues = np.sort(np.linalg.eigvalsh(0.5 * (block + block.T)))
    assert eigenvalues[0] == pytest.approx(0.0, abs=1e-3)
    assert eigenvalues[1] == pytest.approx(1.0 / radius, rel=0.02)


class TestProjectShapeOperator(unittest.TestCase):

    def setUp(self):
        super().setUp()
        self._basis = tangent_basis(
            np.array([1.0, 2.0, 2.0]) / 3.0
        )

    def test_zero(self):
        shape_operator = project_shape_operator(np.zeros((3, 3)), self._basis)
        np.testing.assert_array_equal(shape_operator.a, np.zeros((2, 2)))
        assert shape_operator.symmetrized
        assert shape_operator.asymmetry == 0.0

    def test_identity(self):
        shape_operator = project_shape_operator(np.eye(3), self._basis)
        np.testing.assert_allclose(shape_operator.a, np.eye(2), atol=1e-15)

    def test_tangent_block(self):
        e = self._basis.matrix
        block = np.array([[2.0, 1.0], [0.0, 3.0]])
        dN = e @ block @ e.T
        raw = project_shape_operator(dN, self._basis, symmetrize=False)
        np.testing.assert_allclose(raw.a, block, atol=1e-14)
        assert not raw.symmetrized
        symmetric = project_shape_operator(dN, self._basis)
        np.testing.assert_allclose(
            symmetric.a, [[2.0, 0.5], [0.5, 3.0]], atol=1e-14
        )
        assert symmetric.a[0, 1] == symmetric.a[1, 0]
        assert symmetric.asymmetry == pytest.approx(1.0)

    def test_wrong_shape(self):
        with pytest.raises(ValueError):
            project_shape_operator(np.zeros((2, 2)), self._basis)


def _shape_operator(a):
    basis = TangentBasis(
        e1=np.array([1.0, 0.0, 0.0]),
        e2=np.array([0.0, 1.0, 0.0]),
        n=np.array([0.0, 0.0, 1.0])
    )
    e = basis.matrix
    return project_shape_operator(e @ np.array(a) @ e.T, basis)


params_curvatures = [
    pytest.param([[1.0, 0.0], [0.0, 1.0]], (1.0, -1.0, -1.0, -1.0)),
    pytest.param([[2.0, 0.0], [0.0, 3.0]], (6.0, -2.5, -2.0, -3.0)),
    pytest.param([[0.0, 1.0], [1.0, 0.0]], (-1.0, 0.0, 1.0, -1.0)),
]


@pytest.mark.parametrize('a,expected_output', params_curvatures)
def test_curvatures_from_shape_operator(a, expected_output):
    result = curvatures_from_shape_operator(_shape_operator(a), vertex=4)
    gaussian, mean, kappa1, kappa2 = expected_output
    assert result.vertex == 4
    assert result.method == MethodValues.GAUSS_GRAD
    assert result.gaussian == pytest.approx(gaussian, abs=1e-14)
    assert result.mean == pytest.approx(mean, abs=1e-14)
    assert result.kappa1 == pytest.approx(kappa1, abs=1e-14)
    assert result.kappa2 == pytest.approx(kappa2, abs=1e-14)
    assert abs(np.dot(result.dir1, result.dir2)) < 1e-14


def test_curvatures_from_shape_operator_directions():
    result = curvatures_from_shape_operator(
        _shape_operator([[2.0, 0.0], [0.0, 3.0]])
    )
    np.testing.assert_allclose(result.dir1, (1.0, 0.0, 0.0), atol=1e-15)
    np.testing.assert_allclose(result.dir2, (0.0, 1.0, 0.0), atol=1e-15)
    assert not result.indeterminate_directions


def test_curvatures_from_shape_operator_umbilic():
    result = curvatures_from_shape_operator(_shape_operator(np.eye(2)))
    assert result.indeterminate_directions


def test_curvatures_from_raw_shape_operator():
    basis = tangent_basis((0.0, 0.0, 1.0))
    raw = project_shape_operator(np.eye(3), basis, symmetrize=False)
    with pytest.raises(ValueError):
        curvatures_from_shape_operator(raw)


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_plane(method):
    mesh = plane_grid(10, spacing=0.1)
    for result in estimate_curvatures(mesh, method, _interior(mesh)):
        assert not result.degraded
        assert abs(result.gaussian) <= 1e-10
        assert abs(result.mean) <= 1e-10


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_random_planar_fans(method, rng):
    for _ in range(10):
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=7))
        wrap = 2.0 * np.pi - angles[-1] + angles[0]
        gaps = np.append(np.diff(angles), wrap)
        if np.min(gaps) < 0.05 or np.max(gaps) > np.pi - 0.05:
            continue
        mesh = fan_mesh(angles, rng.uniform(0.5, 1.5, size=7))
        result = estimate_curvatures(mesh, method, [0])[0]
        assert not result.boundary
        assert abs(result.gaussian) <= 1e-10
        assert abs(result.mean) <= 1e-10


def test_estimate_curvatures_sphere(fine_unit_sphere):
    results = estimate_curvatures(fine_unit_sphere, 'gauss-grad')
    assert len(results) == fine_unit_sphere.n_vertices
    assert [r.vertex for r in results] == list(
        range(fine_unit_sphere.n_vertices)
    )
    assert not any(r.degraded or r.boundary for r in results)
    assert np.median([abs(r.gaussian - 1.0) for r in results]) < 0.05
    assert np.median([abs(r.mean + 1.0) for r in results]) < 0.05
    for r in results[::50]:
        assert r.gaussian == pytest.approx(r.kappa1 * r.kappa2, rel=1e-9)
        assert r.mean == pytest.approx(
            0.5 * (r.kappa1 + r.kappa2), rel=1e-9
        )
        assert r.kappa1 >= r.kappa2
        assert abs(np.dot(r.dir1, r.dir2)) < 1e-8
        assert abs(np.dot(r.dir1, r.normal)) < 1e-8
        assert abs(np.dot(r.dir2, r.normal)) < 1e-8


def test_estimate_curvatures_sphere_convergence():
    errors = [_median_errors(icosphere(level))[0] for level in (2, 3, 4)]
    assert errors[0] > errors[1] > errors[2]


def test_estimate_curvatures_cylinder():
    mesh = cylinder(radius=2.0, height=4.0, n_around=48, n_along=9)
    interior = _interior(mesh)
    results = estimate_curvatures(mesh, MethodValues.GAUSS_GRAD, interior)
    axis = np.array([0.0, 0.0, 1.0])
    assert np.median([abs(r.gaussian) for r in results]) < 0.02
    assert np.median([abs(np.dot(r.dir2, axis)) for r in results]) < 0.1
    assert np.median([r.kappa2 for r in results]) == pytest.approx(
        -0.5, rel=0.05
    )


def test_estimate_curvatures_boundary_flag():
    mesh = cylinder(n_around=12, n_along=3)
    results = estimate_curvatures(mesh)
    assert [r.boundary for r in results] == [
        mesh.is_boundary(v) for v in range(mesh.n_vertices)
    ]


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_rigid_motion(method, rng):
    for _ in range(50):
        mesh, vertices = _random_monge_patch(rng)
        reference = estimate_curvatures(mesh, method, vertices)
        rotation = create_rotation_matrix(
            rng.normal(size=3), rng.uniform(0.0, 2.0 * np.pi)
        )
        moved = transform_mesh(mesh, rotation, rng.normal(size=3))
        estimates = estimate_curvatures(moved, method, vertices)
        for r, m in zip(reference, estimates):
            assert m.gaussian == pytest.approx(r.gaussian, abs=1e-9)
            assert m.mean == pytest.approx(r.mean, abs=1e-9)
            assert m.kappa1 == pytest.approx(r.kappa1, abs=1e-9)
            assert m.kappa2 == pytest.approx(r.kappa2, abs=1e-9)
            np.testing.assert_allclose(
                m.normal, rotation @ r.normal, atol=1e-9
            )
            if r.kappa1 - r.kappa2 > 1e-3:
                cosine = abs(np.dot(rotation @ r.dir1, m.dir1))
                assert cosine == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_scale(method, rng):
    for _ in range(50):
        mesh, vertices = _random_monge_patch(rng)
        scale = float(np.exp(rng.uniform(-2.0, 2.0)))
        reference = estimate_curvatures(mesh, method, vertices)
        scaled = estimate_curvatures(
            transform_mesh(mesh, scale=scale), method, vertices
        )
        for r, s in zip(reference, scaled):
            assert s.gaussian == pytest.approx(
                r.gaussian / scale ** 2, rel=1e-9, abs=1e-12
            )
            assert s.mean == pytest.approx(
                r.mean / scale, rel=1e-9, abs=1e-12
            )
            assert s.kappa1 == pytest.approx(
                r.kappa1 / scale, rel=1e-9, abs=1e-12
            )
            assert s.kappa2 == pytest.approx(
                r.kappa2 / scale, rel=1e-9, abs=1e-12
            )


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_orientation_flip(method, rng):
    for _ in range(50):
        mesh, vertices = _random_monge_patch(rng)
        reference = estimate_curvatures(mesh, method, vertices)
        flipped = estimate_curvatures(
            flip_orientation(mesh), method, vertices
        )
        for r, f in zip(reference, flipped):
            assert f.gaussian == pytest.approx(r.gaussian, abs=1e-9)
            assert f.mean == pytest.approx(-r.mean, abs=1e-9)
            assert f.kappa1 == pytest.approx(-r.kappa2, abs=1e-9)
            assert f.kappa2 == pytest.approx(-r.kappa1, abs=1e-9)
            np.testing.assert_allclose(f.normal, -r.normal, atol=1e-12)


def test_shape_operator_basis_independence(unit_sphere, rng):
    _, normals = gauss_map_field(unit_sphere)
    for _ in range(50):
        v = int(rng.integers(unit_sphere.n_vertices))
        dN = estimate_dN(unit_sphere, v, normals)
        basis = tangent_basis(normals[v])
        angle = rng.uniform(0.0, 2.0 * np.pi)
        c, s = np.cos(angle), np.sin(angle)
        rotated = TangentBasis(
            e1=c * basis.e1 + s * basis.e2,
            e2=-s * basis.e1 + c * basis.e2,
            n=basis.n
        )
        first = curvatures_from_shape_operator(
            project_shape_operator(dN, basis)
        )
        second = curvatures_from_shape_operator(
            project_shape_operator(dN, rotated)
        )
        for name in ('gaussian', 'mean', 'kappa1', 'kappa2'):
            assert getattr(second, name) == pytest.approx(
                getattr(first, name), abs=1e-10
            )


def test_estimate_curvatures_degraded_vertex(caplog):
    mesh = TriMesh(
        [
            (0.0, 0.0, 0.0),
            (1.0, 0.0, 0.0),
            (0.0, 1.0, 0.0),
            (-1.0, 0.0, 0.0),
            (0.0, -1.0, 0.0),
        ],
        [(0, 1, 2), (0, 4, 3)]
    )
    with caplog.at_level(logging.WARNING, logger='meshcurv.gauss'):
        results = estimate_curvatures(mesh, MethodValues.GAUSS_GRAD)
    assert len(results) == 5
    assert results[0].degraded
    assert np.isnan(results[0].gaussian)
    assert np.all(np.isnan(results[0].dir1))
    assert 'degraded' in caplog.text


def test_estimate_curvatures_empty_mesh():
    with pytest.raises(EmptyMesh):
        estimate_curvatures(TriMesh(np.zeros((0, 3)), np.zeros((0, 3))))
    with pytest.raises(EmptyMesh):
        estimate_curvatures(TriMesh([(0.0, 0.0, 0.0)], np.zeros((0, 3))))


def test_estimate_curvatures_vertex_selection(unit_sphere):
    results = estimate_curvatures(unit_sphere, vertices=[12, 3, 7])
    assert [r.vertex for r in results] == [12, 3, 7]
    everything = estimate_curvatures(unit_sphere)
    assert results[1].gaussian == everything[3].gaussian
    with pytest.raises(IndexError):
        estimate_curvatures(unit_sphere, vertices=[unit_sphere.n_vertices])


def test_estimate_curvatures_invalid_method(unit_sphere):
    with pytest.raises(ValueError):
        estimate_curvatures(unit_sphere, 'mean-shift')


@pytest.mark.parametrize('method', list(MethodValues))
def test_estimate_curvatures_thread_count(method):
    mesh = icosphere(2)
    single = estimate_curvatures(mesh, method, num_threads=1)
    multiple = estimate_curvatures(mesh, method, num_threads=4)
    for s, m in zip(single, multiple):
        assert s.gaussian == m.gaussian
        assert s.mean == m.mean
        np.testing.assert_array_equal(s.dir1, m.dir1)

import unittest
from pathlib import Path

import numpy as np
import pytest

from meshcurv.enum import MeshFormatValues
from meshcurv.errors import (
    CountMismatch,
    DegenerateFace,
    IndexOutOfRange,
    MeshSyntaxError,
    NonTriangleFace,
)
from meshcurv.io import (
    parse_obj,
    parse_obj_arrays,
    parse_off,
    parse_off_arrays,
    read_mesh,
    read_mesh_arrays,
    write_off,
)
from meshcurv.shapes import icosphere, monge_grid


class TestReadMesh(unittest.TestCase):

    def setUp(self):
        super().setUp()
        file_path = Path(__file__)
        self._test_dir = file_path.parent.parent.joinpath(
            'data',
            'test_files'
        )

    def test_read_minimal_off(self):
        mesh_file = read_mesh(self._test_dir.joinpath('minimal.off'))
        assert mesh_file.format == MeshFormatValues.OFF
        assert mesh_file.path.name == 'minimal.off'
        mesh = mesh_file.mesh
        assert mesh.n_vertices == 3
        assert mesh.n_faces == 1
        np.testing.assert_array_equal(mesh.faces, [[0, 1, 2]])

    def test_read_minimal_obj(self):
        mesh_file = read_mesh(str(self._test_dir.joinpath('minimal.obj')))
        assert mesh_file.format == MeshFormatValues.OBJ
        np.testing.assert_array_equal(mesh_file.mesh.faces, [[0, 1, 2]])
        np.testing.assert_array_equal(
            mesh_file.mesh.vertices[1], (1.0, 0.0, 0.0)
        )

    def test_read_off_with_comments(self):
        mesh = read_mesh(self._test_dir.joinpath('comments.off')).mesh
        assert mesh.n_vertices == 4
        np.testing.assert_array_equal(mesh.faces, [[0, 1, 2], [0, 2, 3]])
        assert np.sum(mesh.face_areas) == pytest.approx(1.0)

    def test_read_obj_with_relative_indices(self):
        mesh = read_mesh(self._test_dir.joinpath('relative.obj')).mesh
        assert mesh.n_vertices == 4
        np.testing.assert_array_equal(mesh.faces, [[0, 1, 2], [0, 2, 3]])

    def test_read_plane_fan(self):
        mesh = read_mesh(self._test_dir.joinpath('plane_fan.off')).mesh
        assert mesh.n_vertices == 7
        assert mesh.n_faces == 6
        assert not mesh.is_boundary(0)
        assert mesh.neighbors(0) == (1, 2, 3, 4, 5, 6)

    def test_read_mesh_arrays_skips_validation(self):
        mesh_format, points, faces = read_mesh_arrays(
            self._test_dir.joinpath('flipped_pair.off')
        )
        assert mesh_format == MeshFormatValues.OFF
        assert points.shape == (4, 3)
        np.testing.assert_array_equal(faces, [[0, 1, 2], [0, 3, 2]])

    def test_missing_file(self):
        with pytest.raises(OSError):
            read_mesh(self._test_dir.joinpath('does_not_exist.off'))


params_malformed_files = [
    pytest.param('bad_header.off', MeshSyntaxError, 1),
    pytest.param('non_triangle.off', NonTriangleFace, 7),
    pytest.param('count_mismatch.off', CountMismatch, 2),
    pytest.param('bad_coordinate.off', MeshSyntaxError, 4),
    pytest.param('index_out_of_range.obj', IndexOutOfRange, 4),
    pytest.param('non_triangle.obj', NonTriangleFace, 6),
]


@pytest.mark.parametrize('filename,error,line', params_malformed_files)
def test_read_malformed_file(test_files_dir, filename, error, line):
    with pytest.raises(error) as info:
        read_mesh(test_files_dir.joinpath(filename))
    assert info.value.line == line
    assert f'line {line}' in str(info.value)
    assert isinstance(info.value, ValueError)


def test_index_out_of_range_reports_index(test_files_dir):
    with pytest.raises(IndexOutOfRange) as info:
        read_mesh(test_files_dir.joinpath('index_out_of_range.obj'))
    assert info.value.index == 5


params_malformed_off = [
    pytest.param('', MeshSyntaxError, id='empty'),
    pytest.param('OFF\n', MeshSyntaxError, id='missing-counts'),
    pytest.param('OFF\n3 1 0 7\n', MeshSyntaxError, id='too-many-counts'),
    pytest.param('OFF\nthree 1 0\n', MeshSyntaxError, id='invalid-counts'),
    pytest.param('OFF\n-3 1 0\n', MeshSyntaxError, id='negative-counts'),
    pytest.param(
        'OFF\n3 1 0\n0 0\n1 0 0\n0 1 0\n3 0 1 2\n',
        MeshSyntaxError,
        id='short-vertex'
    ),
    pytest.param(
        'OFF\n3 1 0\n0 0 inf\n1 0 0\n0 1 0\n3 0 1 2\n',
        MeshSyntaxError,
        id='infinite-coordinate'
    ),
    pytest.param(
        'OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1\n',
        MeshSyntaxError,
        id='short-face'
    ),
    pytest.param(
        'OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 3\n',
        IndexOutOfRange,
        id='index'
    ),
    pytest.param(
        'OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n3 0 2 1\n',
        CountMismatch,
        id='extra-face'
    ),
]


@pytest.mark.parametrize('text,error', params_malformed_off)
def test_parse_off_malformed(text, error):
    with pytest.raises(error):
        parse_off_arrays(text)


params_malformed_obj = [
    pytest.param('v 0 0\n', MeshSyntaxError, id='short-vertex'),
    pytest.param('v 0 0 0\nv 1 0 0\nf 1 2\n', NonTriangleFace, id='edge'),
    pytest.param(
        'v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n',
        IndexOutOfRange,
        id='zero-index'
    ),
    pytest.param(
        'v 0 0 0\nv 1 0 0\nv 0 1 0\nf -4 1 2\n',
        IndexOutOfRange,
        id='relative-index'
    ),
    pytest.param(
        'v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 two 3\n',
        MeshSyntaxError,
        id='invalid-index'
    ),
]


@pytest.mark.parametrize('text,error', params_malformed_obj)
def test_parse_obj_malformed(text, error):
    with pytest.raises(error):
        parse_obj_arrays(text)


def test_parse_off_counts_on_header_line():
    mesh = parse_off('OFF 3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n')
    assert mesh.n_faces == 1


def test_parse_obj_ignores_other_directives():
    text = (
        'mtllib square.mtl\n'
        'v 0 0 0\nv 1 0 0\nv 0 1 0 1.0\n'
        'usemtl default\n'
        'f 1/1 2/2 3/3\n'
    )
    mesh = parse_obj(text)
    assert mesh.n_vertices == 3
    np.testing.assert_array_equal(mesh.faces, [[0, 1, 2]])


def test_parse_off_degenerate_face():
    text = 'OFF\n3 1 0\n0 0 0\n1 0 0\n2 0 0\n3 0 1 2\n'
    points, faces = parse_off_arrays(text)
    assert faces.shape == (1, 3)
    with pytest.raises(DegenerateFace):
        parse_off(text)


def test_write_off():
    mesh = parse_off('OFF\n3 1 0\n0 0 0\n1 0 0\n0 0.5 0\n3 0 1 2\n')
    assert write_off(mesh) == 'OFF\n3 1 0\n0 0 0\n1 0 0\n0 0.5 0\n3 0 1 2\n'


@pytest.mark.parametrize('mesh', [
    pytest.param(icosphere(1), id='icosphere'),
    pytest.param(
        monge_grid(lambda u, v: np.sin(3.0 * u) * v / 7.0, n=4),
        id='monge'
    ),
])
def test_write_off_is_exact(mesh):
    parsed = parse_off(write_off(mesh))
    np.testing.assert_array_equal(parsed.vertices, mesh.vertices)
    np.testing.assert_array_equal(parsed.faces, mesh.faces)


def test_read_mesh_explicit_format(test_files_dir, tmp_path):
    path = tmp_path.joinpath('square.txt')
    path.write_text(test_files_dir.joinpath('minimal.obj').read_text())
    with pytest.raises(ValueError):
        read_mesh(path)
    mesh_file = read_mesh(path, format='obj')
    assert mesh_file.format == MeshFormatValues.OBJ
    assert mesh_file.mesh.n_faces == 1

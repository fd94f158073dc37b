"""Input/Output of triangle meshes based on OFF and OBJ files."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from meshcurv.enum import MeshFormatValues
from meshcurv.errors import (
    CountMismatch,
    IndexOutOfRange,
    MeshSyntaxError,
    NonTriangleFace,
)
from meshcurv.mesh import TriMesh, build_mesh
from meshcurv.valuerep import format_float

logger = logging.getLogger(__name__)


MeshArrays = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class MeshFile:

    """Mesh read from a file.

    Attributes
    ----------
    format: meshcurv.enum.MeshFormatValues
        File format
    path: pathlib.Path
        Path of the file
    mesh: meshcurv.mesh.TriMesh
        Parsed mesh

    """

    format: MeshFormatValues
    path: Path
    mesh: TriMesh


def _significant_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yields the 1-based number and the tokens of each line that is neither
    blank nor a comment.

    """
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if content:
            yield number, content.split()


def _parse_coordinates(tokens: List[str], line: int) -> List[float]:
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        raise MeshSyntaxError(
            f'Invalid vertex coordinates "{" ".join(tokens)}".',
            line=line
        )
    if not all(np.isfinite(values)):
        raise MeshSyntaxError('Vertex coordinates must be finite.', line=line)
    return values


def _parse_index(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MeshSyntaxError(f'Invalid vertex index "{token}".', line=line)


def _as_arrays(
    points: List[List[float]],
    faces: List[List[int]]
) -> MeshArrays:
    return (
        np.array(points, dtype=np.float64).reshape(-1, 3),
        np.array(faces, dtype=np.int64).reshape(-1, 3),
    )


def parse_off_arrays(text: str) -> MeshArrays:
    """Parses the content of an OFF file without validating the geometry.

    Parameters
    ----------
    text: str
        File content: an ``OFF`` header, a line with the vertex, face and
        (ignored) edge counts, one line ``x y z`` per vertex and one line
        ``3 i j k`` per face. Blank lines and ``#`` comments are skipped.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        Vertex positions and zero-based face indices

    Raises
    ------
    meshcurv.errors.MeshSyntaxError
        When a line is malformed.
    meshcurv.errors.NonTriangleFace
        When a face does not have three vertices.
    meshcurv.errors.CountMismatch
        When the number of vertex and face lines disagrees with the header.
    meshcurv.errors.IndexOutOfRange
        When a face references a vertex that does not exist.

    """
    lines = _significant_lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise MeshSyntaxError('Missing "OFF" header.', line=1)
    if tokens[0] != 'OFF':
        raise MeshSyntaxError(
            f'Expected "OFF" header, got "{tokens[0]}".',
            line=number
        )
    counts = tokens[1:]
    counts_line = number
    if len(counts) == 0:
        try:
            counts_line, counts = next(lines)
        except StopIteration:
            raise MeshSyntaxError('Missing element counts.', line=number + 1)
    if len(counts) not in (2, 3):
        raise MeshSyntaxError(
            'Expected vertex, face and edge counts.',
            line=counts_line
        )
    try:
        n_vertices, n_faces = (int(t) for t in counts[:2])
    except ValueError:
        raise MeshSyntaxError(
            f'Invalid element counts "{" ".join(counts)}".',
            line=counts_line
        )
    if n_vertices < 0 or n_faces < 0:
        raise MeshSyntaxError(
            'Element counts must not be negative.',
            line=counts_line
        )

    points: List[List[float]] = []
    faces: List[List[int]] = []
    for number, tokens in lines:
        if len(points) < n_vertices:
            if len(tokens) != 3:
                raise MeshSyntaxError(
                    f'Expected 3 vertex coordinates, got {len(tokens)}.',
                    line=number
                )
            points.append(_parse_coordinates(tokens, number))
        elif len(faces) < n_faces:
            arity = _parse_index(tokens[0], number)
            if arity != 3:
                raise NonTriangleFace(
                    f'Face has {arity} vertices, only triangles are '
                    'supported.',
                    line=number
                )
            if len(tokens) != 4:
                raise MeshSyntaxError(
                    f'Expected 3 vertex indices, got {len(tokens) - 1}.',
                    line=number
                )
            face = [_parse_index(t, number) for t in tokens[1:]]
            for index in face:
                if not 0 <= index < n_vertices:
                    raise IndexOutOfRange(
                        f'Vertex index {index} is out of range '
                        f'[0, {n_vertices}).',
                        index=index,
                        line=number
                    )
            faces.append(face)
        else:
            raise CountMismatch(
                f'Unexpected content after {n_vertices} vertices and '
                f'{n_faces} faces.',
                line=number
            )
    if len(points) != n_vertices or len(faces) != n_faces:
        raise CountMismatch(
            f'Header announces {n_vertices} vertices and {n_faces} faces, '
            f'found {len(points)} vertices and {len(faces)} faces.',
            line=counts_line
        )
    return _as_arrays(points, faces)


def parse_obj_arrays(text: str) -> MeshArrays:
    """Parses the content of an OBJ file without validating the geometry.

    Only vertex (``v``) and face (``f``) directives are read; all other
    directives are skipped. Texture and normal references (``f 1/1/1 ...``)
    are ignored and negative indices refer to previously defined vertices.

    Parameters
    ----------
    text: str
        File content

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        Vertex positions and zero-based face indices

    Raises
    ------
    meshcurv.errors.MeshSyntaxError
        When a vertex or face line is malformed.
    meshcurv.errors.NonTriangleFace
        When a face does not have three vertices.
    meshcurv.errors.IndexOutOfRange
        When a face references a vertex that does not exist.

    """
    points: List[List[float]] = []
    faces: List[List[int]] = []
    face_lines: List[int] = []
    for number, tokens in _significant_lines(text):
        directive = tokens[0]
        if directive == 'v':
            if len(tokens) not in (4, 5):
                raise MeshSyntaxError(
                    'Expected 3 vertex coordinates and an optional weight.',
                    line=number
                )
            points.append(_parse_coordinates(tokens[1:4], number))
        elif directive == 'f':
            if len(tokens) - 1 != 3:
                raise NonTriangleFace(
                    f'Face has {len(tokens) - 1} vertices, only triangles '
                    'are supported.',
                    line=number
                )
            face = []
            for token in tokens[1:]:
                index = _parse_index(token.split('/', 1)[0], number)
                if index > 0:
                    face.append(index - 1)
                elif index < 0:
                    resolved = len(points) + index
                    if resolved < 0:
                        raise IndexOutOfRange(
                            f'Relative vertex index {index} precedes the '
                            'first vertex.',
                            index=index,
                            line=number
                        )
                    face.append(resolved)
                else:
                    raise IndexOutOfRange(
                        'Vertex index 0 is invalid, indices start at 1.',
                        index=index,
                        line=number
                    )
            faces.append(face)
            face_lines.append(number)
    for face, number in zip(faces, face_lines):
        for index in face:
            if index >= len(points):
                raise IndexOutOfRange(
                    f'Vertex index {index + 1} is out of range '
                    f'[1, {len(points)}].',
                    index=index + 1,
                    line=number
                )
    return _as_arrays(points, faces)


def parse_off(text: str) -> TriMesh:
    """Parses the content of an OFF file.

    Parameters
    ----------
    text: str
        File content (see ``parse_off_arrays()``)

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh

    Raises
    ------
    meshcurv.errors.MeshSyntaxError
        When the content is malformed.
    meshcurv.errors.MeshError
        When the mesh is invalid, for example has a degenerate face.

    Examples
    --------
    >>> from meshcurv.io import parse_off
    >>> mesh = parse_off('OFF\\n3 1 0\\n0 0 0\\n1 0 0\\n0 1 0\\n3 0 1 2\\n')
    >>> mesh.n_vertices, mesh.n_faces
    (3, 1)

    """
    points, faces = parse_off_arrays(text)
    return build_mesh(points, faces)


def parse_obj(text: str) -> TriMesh:
    """Parses the content of an OBJ file.

    Parameters
    ----------
    text: str
        File content (see ``parse_obj_arrays()``)

    Returns
    -------
    meshcurv.mesh.TriMesh
        Mesh

    Raises
    ------
    meshcurv.errors.MeshSyntaxError
        When the content is malformed.
    meshcurv.errors.MeshError
        When the mesh is invalid, for example has a degenerate face.

    """
    points, faces = parse_obj_arrays(text)
    return build_mesh(points, faces)


def write_off(mesh: TriMesh) -> str:
    """Encodes a mesh in OFF format.

    Coordinates are written with 17 significant digits, so that parsing the
    output reproduces them exactly.

    Parameters
    ----------
    mesh: meshcurv.mesh.TriMesh
        Mesh

    Returns
    -------
    str
        OFF file content

    """
    lines = ['OFF', f'{mesh.n_vertices} {mesh.n_faces} 0']
    for point in mesh.vertices:
        lines.append(' '.join(format_float(x) for x in point))
    for face in mesh.faces.tolist():
        lines.append('3 {} {} {}'.format(*face))
    return '\n'.join(lines) + '\n'


def _detect_format(
    path: Path,
    format: Optional[Union[MeshFormatValues, str]] = None
) -> MeshFormatValues:
    if format is not None:
        return MeshFormatValues(format)
    suffix = path.suffix.lower().lstrip('.')
    try:
        return MeshFormatValues(suffix)
    except ValueError:
        raise ValueError(
            f'Cannot determine mesh format of file "{path}" from its suffix.'
        )


def read_mesh_arrays(
    path: Union[str, Path],
    format: Optional[Union[MeshFormatValues, str]] = None
) -> Tuple[MeshFormatValues, np.ndarray, np.ndarray]:
    """Reads vertex positions and faces from a file without validating the
    geometry.

    Parameters
    ----------
    path: Union[str, pathlib.Path]
        Path to an OFF or OBJ file
    format: Union[meshcurv.enum.MeshFormatValues, str], optional
        File format. Determined from the file suffix when omitted.

    Returns
    -------
    Tuple[meshcurv.enum.MeshFormatValues, numpy.ndarray, numpy.ndarray]
        File format, vertex positions and zero-based face indices

    Raises
    ------
    OSError
        When the file cannot be read.
    ValueError
        When the format cannot be determined.
    meshcurv.errors.MeshSyntaxError
        When the content is malformed.

    """
    path = Path(path)
    mesh_format = _detect_format(path, format)
    logger.debug(f'read {mesh_format.value} file "{path}"')
    text = path.read_text(encoding='utf-8')
    if mesh_format == MeshFormatValues.OFF:
        points, faces = parse_off_arrays(text)
    else:
        points, faces = parse_obj_arrays(text)
    return mesh_format, points, faces


def read_mesh(
    path: Union[str, Path],
    format: Optional[Union[MeshFormatValues, str]] = None
) -> MeshFile:
    """Reads a mesh from a file.

    Parameters
    ----------
    path: Union[str, pathlib.Path]
        Path to an OFF or OBJ file
    format: Union[meshcurv.enum.MeshFormatValues, str], optional
        File format. Determined from the file suffix when omitted.

    Returns
    -------
    meshcurv.io.MeshFile
        Parsed mesh

    Raises
    ------
    OSError
        When the file cannot be read.
    ValueError
        When the format cannot be determined or the content is not a valid
        mesh.

    """
    mesh_format, points, faces = read_mesh_arrays(path, format)
    return MeshFile(
        format=mesh_format,
        path=Path(path),
        mesh=build_mesh(points, faces)
    )

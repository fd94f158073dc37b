"""Command-line interface."""
import argparse
import datetime
import logging
import sys
from pathlib import Path
from typing import List, NoReturn, Optional, Sequence, Tuple

from meshcurv.bench.content import BenchConfig
from meshcurv.bench.ensemble import run_ensemble
from meshcurv.enum import MethodValues
from meshcurv.errors import EmptyMesh, MeshSyntaxError
from meshcurv.gauss import estimate_curvatures
from meshcurv.io import read_mesh, read_mesh_arrays
from meshcurv.mesh import build_mesh, check_orientation, find_degenerate_faces
from meshcurv.utils import resolve_num_threads
from meshcurv.valuerep import (
    RunManifest,
    write_bench_csv,
    write_curvature_csv,
)
from meshcurv.version import __version__

logger = logging.getLogger(__name__)


EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_FINDINGS = 2
EXIT_FAILURE = 3


class _ArgumentParser(argparse.ArgumentParser):

    """Argument parser that exits with status 1 on usage errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def _range(text: str, kind: type) -> Tuple:
    parts = text.split(':')
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f'expected a range LO:HI, got "{text}"'
        )
    try:
        low, high = kind(parts[0]), kind(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid range "{text}"')
    if low > high:
        raise argparse.ArgumentTypeError(f'empty range "{text}"')
    return (low, high)


def _int_range(text: str) -> Tuple[int, int]:
    return _range(text, int)


def _float_range(text: str) -> Tuple[float, float]:
    return _range(text, float)


def _method_list(text: str) -> Tuple[MethodValues, ...]:
    try:
        return tuple(MethodValues(m.strip()) for m in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid method list "{text}"')


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid integer "{text}"')
    if value < 1:
        raise argparse.ArgumentTypeError('expected a positive integer')
    return value


def _create_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='meshcurv',
        description='Estimates curvatures of triangle meshes.'
    )
    parser.add_argument(
        '--version', action='version', version=f'%(prog)s {__version__}'
    )
    parser.add_argument(
        '-v', '--verbose', action='store_true',
        help='log progress messages'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    common = _ArgumentParser(add_help=False)
    common.add_argument(
        '--threads', type=_positive_int, default=None,
        help=(
            'number of worker threads (default: MESHCURV_NUM_THREADS or '
            'the number of CPUs)'
        )
    )
    common.add_argument(
        '--timestamp', action='store_true',
        help='record the creation time in the output header'
    )
    common.add_argument(
        '--output', default='-',
        help='path of the CSV output file (default: standard output)'
    )

    estimate = subparsers.add_parser(
        'estimate', parents=[common],
        help='estimate curvatures at the vertices of a mesh'
    )
    estimate.add_argument(
        '--input', required=True, help='path of an OFF or OBJ file'
    )
    estimate.add_argument(
        '--method', default=MethodValues.GAUSS_GRAD.value,
        choices=[m.value for m in MethodValues] + ['all'],
        help='estimation method'
    )

    defaults = BenchConfig()
    bench = subparsers.add_parser(
        'bench', parents=[common],
        help='compare methods on random polynomial surfaces'
    )
    bench.add_argument(
        '--surfaces', type=_positive_int, default=defaults.n_surfaces
    )
    bench.add_argument(
        '--partitions', type=_positive_int, default=defaults.n_partitions
    )
    bench.add_argument('--seed', type=int, default=defaults.seed)
    bench.add_argument(
        '--degrees', type=_int_range, default=defaults.degree_range,
        help='inclusive range of polynomial degrees LO:HI'
    )
    bench.add_argument(
        '--radii', type=_float_range, default=defaults.radius_range,
        help='range of fan radii LO:HI'
    )
    bench.add_argument(
        '--valence', type=_int_range, default=defaults.valence_range,
        help='inclusive range of fan valences LO:HI'
    )
    bench.add_argument(
        '--coeff-bound', type=float, default=defaults.coeff_bound,
        help='bound of the absolute value of polynomial coefficients'
    )
    bench.add_argument(
        '--methods', type=_method_list, default=defaults.methods,
        help='comma-separated estimation methods'
    )

    check = subparsers.add_parser(
        'check', help='report degenerate faces and inconsistent orientation'
    )
    check.add_argument(
        '--input', required=True, help='path of an OFF or OBJ file'
    )
    return parser


def _timestamp(requested: bool) -> Optional[str]:
    if not requested:
        return None
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _emit(text: str, output: str) -> None:
    if output == '-':
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding='utf-8')


def _estimate(args: argparse.Namespace) -> int:
    try:
        mesh_file = read_mesh(args.input)
    except (OSError, ValueError) as error:
        logger.error(f'cannot read mesh "{args.input}": {error}')
        return EXIT_USAGE
    if args.method == 'all':
        methods = list(MethodValues)
    else:
        methods = [MethodValues(args.method)]
    num_threads = resolve_num_threads(args.threads)
    results = []
    try:
        for method in methods:
            results.extend(
                estimate_curvatures(
                    mesh_file.mesh, method, num_threads=num_threads
                )
            )
    except EmptyMesh as error:
        logger.error(str(error))
        return EXIT_USAGE
    manifest = RunManifest(
        command='estimate',
        version=__version__,
        config={
            'input': str(mesh_file.path),
            'format': mesh_file.format.value,
            'method': args.method,
        },
        timestamp=_timestamp(args.timestamp)
    )
    _emit(write_curvature_csv(results, manifest, mesh_file.mesh), args.output)
    return EXIT_SUCCESS


def _bench(args: argparse.Namespace) -> int:
    try:
        config = BenchConfig(
            n_surfaces=args.surfaces,
            n_partitions=args.partitions,
            seed=args.seed,
            degree_range=args.degrees,
            radius_range=args.radii,
            valence_range=args.valence,
            coeff_bound=args.coeff_bound,
            methods=args.methods,
        )
    except ValueError as error:
        logger.error(f'invalid benchmark configuration: {error}')
        return EXIT_USAGE
    num_threads = resolve_num_threads(args.threads)
    report = run_ensemble(config, num_threads=num_threads)
    manifest = RunManifest(
        command='bench',
        version=__version__,
        config=config.as_dict(),
        seed=config.seed,
        timestamp=_timestamp(args.timestamp)
    )
    _emit(write_bench_csv(report, manifest), args.output)
    return EXIT_SUCCESS


def _check(args: argparse.Namespace) -> int:
    try:
        _, points, faces = read_mesh_arrays(args.input)
    except (OSError, ValueError) as error:
        logger.error(f'cannot read mesh "{args.input}": {error}')
        return EXIT_USAGE
    findings: List[str] = [
        f'face {face}: {reason}'
        for face, reason in find_degenerate_faces(points, faces)
    ]
    if not findings:
        mesh = build_mesh(points, faces)
        for edge in check_orientation(mesh):
            findings.append(
                f'edge {edge.vertices[0]}-{edge.vertices[1]}: traversed in '
                'the same direction by faces ' +
                ', '.join(str(f) for f in edge.faces)
            )
        for star in mesh.stars:
            if len(star.incident_faces) == 0:
                findings.append(f'vertex {star.vertex}: isolated')
    for finding in findings:
        sys.stdout.write(finding + '\n')
    if findings:
        return EXIT_FINDINGS
    sys.stdout.write('no findings\n')
    return EXIT_SUCCESS


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the command-line interface.

    Parameters
    ----------
    argv: Sequence[str], optional
        Command-line arguments without the program name. Defaults to
        ``sys.argv[1:]``.

    Returns
    -------
    int
        Exit status: 0 on success, 1 on usage or input errors, 2 when
        ``check`` found problems and 3 on other failures

    """
    parser = _create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return int(error.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING
    )
    handlers = {
        'estimate': _estimate,
        'bench': _bench,
        'check': _check,
    }
    try:
        return handlers[args.command](args)
    except MeshSyntaxError as error:
        logger.error(str(error))
        return EXIT_USAGE
    except Exception as error:
        logger.error(f'{args.command} failed: {error}')
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())

"""Text encoding of curvature and benchmark results."""
import csv
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from numpy import isnan

from meshcurv.bench.content import BenchReport
from meshcurv.content import CurvatureResult
from meshcurv.enum import MethodValues
from meshcurv.mesh import TriMesh


CURVATURE_COLUMNS = [
    'vertex', 'x', 'y', 'z', 'method', 'K', 'H', 'k1', 'k2',
    'd1x', 'd1y', 'd1z', 'd2x', 'd2y', 'd2z', 'boundary', 'degraded',
]

BENCH_COLUMNS = [
    'sweep', 'unit_index', 'method', 'mean_errK', 'std_errK',
    'mean_errH', 'std_errH', 'n_kept', 'n_excluded', 'n_degraded',
]


def format_float(f: float) -> str:
    """Get a string representation of a float that round-trips exactly.

    Parameters
    ----------
    f: float
        Floating point number

    Returns
    -------
    str
        17 significant digits, ``nan`` for not-a-number and ``inf`` or
        ``-inf`` for infinite values

    """
    f = float(f)
    if isnan(f):
        return 'nan'
    return '%.17g' % f


@dataclass(frozen=True)
class RunManifest:

    """Description of the run that produced an output file.

    Attributes
    ----------
    command: str
        Name of the command
    version: str
        Version of the package
    config: Dict[str, str]
        Resolved configuration values
    seed: Union[int, None]
        Seed of the random draws, if any
    timestamp: Union[str, None]
        Creation time, if requested

    """

    command: str
    version: str
    config: Dict[str, str] = field(default_factory=dict)
    seed: Optional[int] = None
    timestamp: Optional[str] = None

    def header_lines(self) -> List[str]:
        """Encodes the manifest as comment lines.

        Returns
        -------
        List[str]
            Lines of the form ``# key=value``

        """
        lines = [
            f'# command={self.command}',
            f'# version={self.version}',
        ]
        if self.seed is not None:
            lines.append(f'# seed={self.seed}')
        for key, value in self.config.items():
            if key == 'seed':
                continue
            lines.append(f'# {key}={value}')
        if self.timestamp is not None:
            lines.append(f'# timestamp={self.timestamp}')
        return lines


def _write_table(
    manifest: RunManifest,
    columns: Sequence[str],
    rows: Sequence[Sequence[str]]
) -> str:
    buffer = io.StringIO()
    for line in manifest.header_lines():
        buffer.write(line + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(rows)
    return buffer.getvalue()


def write_curvature_csv(
    results: Sequence[CurvatureResult],
    manifest: RunManifest,
    mesh: TriMesh
) -> str:
    """Encodes curvature estimates as CSV.

    Parameters
    ----------
    results: Sequence[meshcurv.content.CurvatureResult]
        Estimates, possibly of several methods
    manifest: meshcurv.valuerep.RunManifest
        Description of the run, written as comment header
    mesh: meshcurv.mesh.TriMesh
        Mesh on which curvatures were estimated

    Returns
    -------
    str
        CSV text with one row per vertex and method, ordered by vertex and
        then by method

    """
    method_order = {m: i for i, m in enumerate(MethodValues)}
    ordered = sorted(
        results,
        key=lambda r: (r.vertex, method_order[r.method])
    )
    rows = []
    for result in ordered:
        position = mesh.vertices[result.vertex]
        rows.append(
            [str(result.vertex)] +
            [format_float(x) for x in position] +
            [result.method.value] +
            [
                format_float(x) for x in (
                    result.gaussian,
                    result.mean,
                    result.kappa1,
                    result.kappa2,
                )
            ] +
            [format_float(x) for x in result.dir1] +
            [format_float(x) for x in result.dir2] +
            [str(int(result.boundary)), str(int(result.degraded))]
        )
    return _write_table(manifest, CURVATURE_COLUMNS, rows)


def write_bench_csv(report: BenchReport, manifest: RunManifest) -> str:
    """Encodes benchmark statistics as CSV.

    Parameters
    ----------
    report: meshcurv.bench.content.BenchReport
        Ensemble report
    manifest: meshcurv.valuerep.RunManifest
        Description of the run, written as comment header

    Returns
    -------
    str
        CSV text with one row per sweep, unit and method followed by the
        overall rows (``unit_index`` -1). Degraded and skipped trials are
        counted together in ``n_degraded``.

    """
    rows = []
    for summary in report.summaries:
        rows.append([
            summary.sweep.value,
            str(summary.unit_index),
            summary.method.value,
            format_float(summary.mean_error_gaussian),
            format_float(summary.std_error_gaussian),
            format_float(summary.mean_error_mean),
            format_float(summary.std_error_mean),
            str(summary.n_kept),
            str(summary.n_excluded),
            str(summary.n_degraded + summary.n_skipped),
        ])
    return _write_table(manifest, BENCH_COLUMNS, rows)

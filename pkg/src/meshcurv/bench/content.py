"""Data types of the benchmark harness."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial

from meshcurv.bench.enum import SweepValues, TrialStatusValues
from meshcurv.enum import MethodValues


class PolySurface(object):

    """Bivariate polynomial Monge patch ``z = f(u, v)``.

    The polynomial is ``f(u, v) = sum_ij c[i, j] u^i v^j`` with ``0 <= i <=
    m`` and ``0 <= j <= n``.

    Examples
    --------
    >>> from meshcurv.bench.content import PolySurface
    >>> paraboloid = PolySurface([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    >>> float(paraboloid(1.0, 2.0))
    5.0

    """

    def __init__(
        self,
        coefficients: Union[np.ndarray, Sequence[Sequence[float]]],
        coefficient_bound: Optional[float] = None
    ) -> None:
        """
        Parameters
        ----------
        coefficients: Union[numpy.ndarray, Sequence[Sequence[float]]]
            Coefficient grid of shape ``(m + 1, n + 1)``
        coefficient_bound: float, optional
            Maximum absolute value of a coefficient

        Raises
        ------
        ValueError
            When the grid is not two-dimensional and non-empty or when a
            coefficient is not finite or exceeds `coefficient_bound`.

        """
        grid = np.array(coefficients, dtype=np.float64)
        if grid.ndim != 2 or grid.size == 0:
            raise ValueError(
                'Argument "coefficients" must be a non-empty 2D grid.'
            )
        if not np.all(np.isfinite(grid)):
            raise ValueError('Argument "coefficients" must be finite.')
        if coefficient_bound is not None:
            if np.any(np.abs(grid) > coefficient_bound):
                raise ValueError(
                    'Coefficients must not exceed the bound '
                    f'{coefficient_bound} in absolute value.'
                )
        grid.flags.writeable = False
        self._coefficients = grid

    def __repr__(self) -> str:
        return (
            f'PolySurface(degree_u={self.degree_u}, '
            f'degree_v={self.degree_v})'
        )

    def __call__(
        self,
        u: Union[float, np.ndarray],
        v: Union[float, np.ndarray]
    ) -> Union[float, np.ndarray]:
        return polynomial.polyval2d(u, v, self._coefficients)

    @property
    def coefficients(self) -> np.ndarray:
        """numpy.ndarray: read-only coefficient grid ``c[i, j]``"""
        return self._coefficients

    @property
    def degree_u(self) -> int:
        """int: highest power of `u`"""
        return self._coefficients.shape[0] - 1

    @property
    def degree_v(self) -> int:
        """int: highest power of `v`"""
        return self._coefficients.shape[1] - 1

    def derivative(self, order_u: int, order_v: int) -> 'PolySurface':
        """Differentiates the polynomial.

        Parameters
        ----------
        order_u: int
            Number of derivatives with respect to `u`
        order_v: int
            Number of derivatives with respect to `v`

        Returns
        -------
        meshcurv.bench.content.PolySurface
            Partial derivative polynomial

        """
        grid = polynomial.polyder(self._coefficients, m=order_u, axis=0)
        grid = polynomial.polyder(grid, m=order_v, axis=1)
        return PolySurface(grid)


@dataclass(frozen=True)
class FanSpec:

    """Ring of a fan around the origin in the ``(u, v)`` plane.

    Attributes
    ----------
    angles: numpy.ndarray
        Strictly increasing polar angles in ``[0, 2 pi)``
    radii: numpy.ndarray
        Positive distance of each ring vertex from the origin

    """

    angles: np.ndarray
    radii: np.ndarray

    def __post_init__(self) -> None:
        angles = np.array(self.angles, dtype=np.float64)
        radii = np.array(self.radii, dtype=np.float64)
        if angles.ndim != 1 or angles.shape != radii.shape:
            raise ValueError(
                'Arguments "angles" and "radii" must have equal length.'
            )
        if len(angles) < 3:
            raise ValueError('A fan must have at least 3 ring vertices.')
        if np.any(angles < 0.0) or np.any(angles >= 2.0 * np.pi):
            raise ValueError('Angles must lie in [0, 2 pi).')
        if np.any(np.diff(angles) <= 0.0):
            raise ValueError('Angles must be strictly increasing.')
        if not np.all(radii > 0.0):
            raise ValueError('Radii must be positive.')
        angles.flags.writeable = False
        radii.flags.writeable = False
        object.__setattr__(self, 'angles', angles)
        object.__setattr__(self, 'radii', radii)

    @property
    def valence(self) -> int:
        """int: number of ring vertices"""
        return len(self.angles)

    def gaps(self) -> np.ndarray:
        """Angular gaps between consecutive ring vertices.

        Returns
        -------
        numpy.ndarray
            Gap following each ring vertex, the last one wrapping around to
            the first vertex

        """
        wrap = 2.0 * np.pi - self.angles[-1] + self.angles[0]
        return np.append(np.diff(self.angles), wrap)


@dataclass(frozen=True)
class BenchConfig:

    """Configuration of a benchmark ensemble.

    Attributes
    ----------
    n_surfaces: int
        Number of random surfaces
    n_partitions: int
        Number of random fan partitions applied to every surface
    seed: int
        Seed of all random draws
    degree_range: Tuple[int, int]
        Inclusive range of the polynomial degrees in `u` and `v`
    radius_range: Tuple[float, float]
        Range of the ring radii
    valence_range: Tuple[int, int]
        Inclusive range of the number of ring vertices
    coeff_bound: float
        Bound of the absolute value of the polynomial coefficients
    methods: Tuple[meshcurv.enum.MethodValues, ...]
        Compared estimation methods
    near_zero_k: float
        Trials with smaller absolute Gaussian curvature are excluded from
        the relative Gaussian curvature errors

    """

    n_surfaces: int = 100
    n_partitions: int = 100
    seed: int = 0
    degree_range: Tuple[int, int] = (2, 3)
    radius_range: Tuple[float, float] = (0.05, 0.15)
    valence_range: Tuple[int, int] = (5, 9)
    coeff_bound: float = 5.0
    methods: Tuple[MethodValues, ...] = tuple(MethodValues)
    near_zero_k: float = 1e-4

    def __post_init__(self) -> None:
        if self.n_surfaces < 1:
            raise ValueError('Number of surfaces must be positive.')
        if self.n_partitions < 1:
            raise ValueError('Number of partitions must be positive.')
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError('Seed must be a non-negative 64-bit integer.')
        low, high = self.degree_range
        if not 0 <= low <= high:
            raise ValueError(
                'Degree range must be non-empty and non-negative.'
            )
        low, high = self.valence_range
        if not 3 <= low <= high:
            raise ValueError(
                'Valence range must be non-empty and start at 3 or above.'
            )
        low_radius, high_radius = self.radius_range
        if not 0.0 < low_radius <= high_radius:
            raise ValueError(
                'Radius range must be non-empty and positive.'
            )
        if not self.coeff_bound >= 0.0:
            raise ValueError('Coefficient bound must not be negative.')
        if not self.near_zero_k >= 0.0:
            raise ValueError('Near-zero threshold must not be negative.')
        methods = tuple(MethodValues(m) for m in self.methods)
        if len(methods) == 0:
            raise ValueError('At least one method must be given.')
        if len(set(methods)) != len(methods):
            raise ValueError('Methods must not repeat.')
        object.__setattr__(self, 'methods', methods)

    def as_dict(self) -> Dict[str, str]:
        """Describes the configuration as key-value pairs.

        Returns
        -------
        Dict[str, str]
            Textual value of each field

        """
        return {
            'surfaces': str(self.n_surfaces),
            'partitions': str(self.n_partitions),
            'seed': str(self.seed),
            'degrees': f'{self.degree_range[0]}:{self.degree_range[1]}',
            'radii': f'{self.radius_range[0]!r}:{self.radius_range[1]!r}',
            'valence': f'{self.valence_range[0]}:{self.valence_range[1]}',
            'coeff_bound': repr(self.coeff_bound),
            'methods': ','.join(m.value for m in self.methods),
            'near_zero_k': repr(self.near_zero_k),
        }


@dataclass(frozen=True)
class AnalyticCurvature:

    """Exact curvatures of a surface point.

    The normal points upward, i.e. has a positive z-component, so that the
    paraboloid ``z = u^2 + v^2`` has ``kappa1 = kappa2 = 2`` at the origin.

    """

    gaussian: float
    mean: float
    kappa1: float
    kappa2: float
    normal: np.ndarray


@dataclass(frozen=True)
class TrialRecord:

    """Outcome of one method on one (surface, partition) trial.

    Attributes
    ----------
    surface_index: int
        Index of the random surface
    partition_index: int
        Index of the random fan partition
    method: meshcurv.enum.MethodValues
        Estimation method
    status: meshcurv.bench.enum.TrialStatusValues
        Whether the trial counts towards the error statistics
    true_gaussian: float
        Exact Gaussian curvature at the fan center
    true_mean: float
        Exact mean curvature at the fan center
    gaussian: float
        Estimated Gaussian curvature
    mean: float
        Estimated mean curvature after orientation alignment
    error_gaussian: float
        Relative error of the Gaussian curvature
    error_mean: float
        Relative error of the mean curvature

    """

    surface_index: int
    partition_index: int
    method: MethodValues
    status: TrialStatusValues
    true_gaussian: float
    true_mean: float
    gaussian: float = np.nan
    mean: float = np.nan
    error_gaussian: float = np.nan
    error_mean: float = np.nan


@dataclass(frozen=True)
class MethodSummary:

    """Error statistics of a method over a group of trials.

    Standard deviations are population standard deviations. Statistics over
    an empty set of trials are ``nan``.

    """

    method: MethodValues
    sweep: SweepValues
    unit_index: int
    mean_error_gaussian: float
    std_error_gaussian: float
    mean_error_mean: float
    std_error_mean: float
    n_kept: int
    n_excluded: int
    n_degraded: int
    n_skipped: int

    @property
    def n_trials(self) -> int:
        """int: total number of trials in the group"""
        return self.n_kept + self.n_excluded + self.n_degraded + self.n_skipped


def _mean_and_std(values: List[float]) -> Tuple[float, float]:
    if len(values) == 0:
        return (np.nan, np.nan)
    array = np.array(values, dtype=np.float64)
    return (float(np.mean(array)), float(np.std(array)))


def summarize(
    records: Sequence[TrialRecord],
    method: MethodValues,
    sweep: SweepValues,
    unit_index: int
) -> MethodSummary:
    """Aggregates the trial records of one method.

    Relative errors of the Gaussian curvature are aggregated over kept
    trials; relative errors of the mean curvature over kept and excluded
    trials.

    Parameters
    ----------
    records: Sequence[meshcurv.bench.content.TrialRecord]
        Records of the group; records of other methods are ignored
    method: meshcurv.enum.MethodValues
        Method to summarize
    sweep: meshcurv.bench.enum.SweepValues
        Grouping the records belong to
    unit_index: int
        Index of the surface or partition, ``-1`` for overall summaries

    Returns
    -------
    meshcurv.bench.content.MethodSummary
        Error statistics

    """
    counts = {status: 0 for status in TrialStatusValues}
    errors_gaussian = []
    errors_mean = []
    for record in records:
        if record.method != method:
            continue
        counts[record.status] += 1
        if record.status == TrialStatusValues.KEPT:
            errors_gaussian.append(record.error_gaussian)
        if record.status in (
            TrialStatusValues.KEPT,
            TrialStatusValues.EXCLUDED,
        ):
            errors_mean.append(record.error_mean)
    mean_k, std_k = _mean_and_std(errors_gaussian)
    mean_h, std_h = _mean_and_std(errors_mean)
    return MethodSummary(
        method=method,
        sweep=sweep,
        unit_index=unit_index,
        mean_error_gaussian=mean_k,
        std_error_gaussian=std_k,
        mean_error_mean=mean_h,
        std_error_mean=std_h,
        n_kept=counts[TrialStatusValues.KEPT],
        n_excluded=counts[TrialStatusValues.EXCLUDED],
        n_degraded=counts[TrialStatusValues.DEGRADED],
        n_skipped=counts[TrialStatusValues.SKIPPED],
    )


@dataclass(frozen=True)
class BenchReport:

    """Error statistics of an ensemble run.

    Summaries are grouped per surface (averaging over partitions), per
    partition (averaging over surfaces) and over all trials.

    """

    config: BenchConfig
    records: Tuple[TrialRecord, ...]
    summaries: Tuple[MethodSummary, ...] = field(init=False)

    def __post_init__(self) -> None:
        by_surface: Dict[int, List[TrialRecord]] = {}
        by_partition: Dict[int, List[TrialRecord]] = {}
        for record in self.records:
            by_surface.setdefault(record.surface_index, []).append(record)
            by_partition.setdefault(record.partition_index, []).append(record)
        summaries = []
        for sweep, groups in (
            (SweepValues.PER_SURFACE, by_surface),
            (SweepValues.PER_PARTITION, by_partition),
        ):
            for unit in sorted(groups):
                for method in self.config.methods:
                    summaries.append(
                        summarize(groups[unit], method, sweep, unit)
                    )
        for method in self.config.methods:
            summaries.append(
                summarize(self.records, method, SweepValues.OVERALL, -1)
            )
        object.__setattr__(self, 'summaries', tuple(summaries))

    def trials(self) -> Tuple[TrialRecord, ...]:
        """Tuple[meshcurv.bench.content.TrialRecord, ...]: all trial records
        ordered by surface, partition and method"""
        return self.records

    def summary(
        self,
        method: Union[MethodValues, str],
        sweep: Union[SweepValues, str] = SweepValues.OVERALL,
        unit: Optional[int] = None
    ) -> MethodSummary:
        """Gets the summary of a method.

        Parameters
        ----------
        method: Union[meshcurv.enum.MethodValues, str]
            Estimation method
        sweep: Union[meshcurv.bench.enum.SweepValues, str], optional
            Grouping of the trials
        unit: int, optional
            Surface or partition index; required unless `sweep` is overall

        Returns
        -------
        meshcurv.bench.content.MethodSummary
            Error statistics

        Raises
        ------
        ValueError
            When `unit` is missing for a per-surface or per-partition sweep.
        KeyError
            When no such summary exists.

        """
        method = MethodValues(method)
        sweep = SweepValues(sweep)
        if sweep == SweepValues.OVERALL:
            unit = -1
        elif unit is None:
            raise ValueError(
                f'Argument "unit" is required for sweep "{sweep.value}".'
            )
        for summary in self.summaries:
            if (
                summary.method == method and
                summary.sweep == sweep and
                summary.unit_index == unit
            ):
                return summary
        raise KeyError(
            f'No summary for method "{method.value}", sweep '
            f'"{sweep.value}" and unit {unit}.'
        )

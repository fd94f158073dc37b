"""Ensembles of curvature estimates on random fans of random surfaces."""
import logging
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from meshcurv.bench.content import (
    BenchConfig,
    BenchReport,
    FanSpec,
    PolySurface,
    TrialRecord,
)
from meshcurv.bench.enum import TrialStatusValues
from meshcurv.bench.surface import (
    analytic_curvature,
    build_fan_mesh,
    random_fan,
    random_surface,
    relative_error,
)
from meshcurv.enum import MethodValues
from meshcurv.errors import MeshError, RetryExhausted
from meshcurv.gauss import estimate_curvatures
from meshcurv.utils import parallel_map


logger = logging.getLogger(__name__)


SURFACE_STREAM = 0
PARTITION_STREAM = 1


def _generator(seed: int, stream: int, index: int) -> np.random.Generator:
    """Creates the random generator of one surface or partition.

    The substream depends only on the seed and the index, never on the
    order in which trials are executed.

    """
    sequence = np.random.SeedSequence(seed, spawn_key=(stream, index))
    return np.random.default_rng(sequence)


def draw_surface(config: BenchConfig, index: int) -> PolySurface:
    """Draws the surface with the given index of an ensemble."""
    return random_surface(
        _generator(config.seed, SURFACE_STREAM, index),
        config.degree_range,
        config.coeff_bound
    )


def draw_partition(config: BenchConfig, index: int) -> Optional[FanSpec]:
    """Draws the fan partition with the given index of an ensemble.

    Returns ``None`` when no valid partition could be drawn.

    """
    try:
        return random_fan(
            _generator(config.seed, PARTITION_STREAM, index),
            config.valence_range,
            config.radius_range
        )
    except RetryExhausted as error:
        logger.warning(f'skip partition {index}: {error}')
        return None


def run_trial(
    surface: PolySurface,
    fan: Optional[FanSpec],
    methods: Sequence[MethodValues],
    near_zero_k: float = 1e-4,
    surface_index: int = 0,
    partition_index: int = 0
) -> List[TrialRecord]:
    """Estimates curvatures at the center of one fan on one surface.

    Parameters
    ----------
    surface: meshcurv.bench.content.PolySurface
        Random surface
    fan: Union[meshcurv.bench.content.FanSpec, None]
        Fan partition; ``None`` skips the trial
    methods: Sequence[meshcurv.enum.MethodValues]
        Compared estimation methods
    near_zero_k: float, optional
        Absolute Gaussian curvature below which the trial is excluded from
        Gaussian curvature errors
    surface_index: int, optional
        Index recorded in the results
    partition_index: int, optional
        Index recorded in the results

    Returns
    -------
    List[meshcurv.bench.content.TrialRecord]
        One record per method

    Note
    ----
    The estimated mean curvature is negated before comparison when the
    estimated normal points against the upward normal of the surface.
    The fan is surrounded by an outer ring of surface samples, so the
    vertex normals of the ring vertices come from closed stars. The center
    star, which is all the baselines look at, does not change.

    """
    truth = analytic_curvature(surface, 0.0, 0.0)
    mesh = None
    if fan is not None:
        try:
            mesh, center = build_fan_mesh(
                surface, fan, outer_ring=True
            )
        except MeshError as error:
            logger.debug(
                f'skip trial ({surface_index}, {partition_index}): {error}'
            )
    if mesh is None:
        return [
            TrialRecord(
                surface_index=surface_index,
                partition_index=partition_index,
                method=method,
                status=TrialStatusValues.SKIPPED,
                true_gaussian=truth.gaussian,
                true_mean=truth.mean,
            )
            for method in methods
        ]

    if abs(truth.gaussian) < near_zero_k:
        kept = TrialStatusValues.EXCLUDED
    else:
        kept = TrialStatusValues.KEPT
    records = []
    for method in methods:
        result = estimate_curvatures(
            mesh,
            method,
            vertices=[center],
            num_threads=1
        )[0]
        if result.degraded:
            records.append(
                TrialRecord(
                    surface_index=surface_index,
                    partition_index=partition_index,
                    method=method,
                    status=TrialStatusValues.DEGRADED,
                    true_gaussian=truth.gaussian,
                    true_mean=truth.mean,
                )
            )
            continue
        mean = result.mean
        if np.dot(result.normal, truth.normal) < 0.0:
            mean = -mean
        records.append(
            TrialRecord(
                surface_index=surface_index,
                partition_index=partition_index,
                method=method,
                status=kept,
                true_gaussian=truth.gaussian,
                true_mean=truth.mean,
                gaussian=result.gaussian,
                mean=mean,
                error_gaussian=relative_error(truth.gaussian, result.gaussian),
                error_mean=relative_error(truth.mean, mean),
            )
        )
    return records


def _run_surface(
    config: BenchConfig,
    partitions: Sequence[Optional[FanSpec]],
    surface_index: int
) -> List[TrialRecord]:
    surface = draw_surface(config, surface_index)
    records = []
    for partition_index, fan in enumerate(partitions):
        records.extend(
            run_trial(
                surface,
                fan,
                config.methods,
                config.near_zero_k,
                surface_index,
                partition_index
            )
        )
    return records


def run_ensemble(
    config: BenchConfig,
    num_threads: Optional[int] = None
) -> BenchReport:
    """Runs every method on every combination of random surface and random
    fan partition.

    Surface `i` and partition `j` are drawn from random substreams keyed on
    the seed and their index, so the report is identical for any number of
    threads.

    Parameters
    ----------
    config: meshcurv.bench.content.BenchConfig
        Ensemble configuration
    num_threads: int, optional
        Number of worker threads

    Returns
    -------
    meshcurv.bench.content.BenchReport
        Trial records with per-surface, per-partition and overall error
        statistics

    Examples
    --------
    >>> from meshcurv.bench.content import BenchConfig
    >>> from meshcurv.bench.ensemble import run_ensemble
    >>> report = run_ensemble(BenchConfig(n_surfaces=2, n_partitions=3))
    >>> len(report.trials())
    24

    """
    logger.info(
        f'run ensemble with {config.n_surfaces} surfaces x '
        f'{config.n_partitions} partitions'
    )
    partitions = [
        draw_partition(config, j) for j in range(config.n_partitions)
    ]
    per_surface = parallel_map(
        partial(_run_surface, config, partitions),
        range(config.n_surfaces),
        num_threads
    )
    records = tuple(r for rows in per_surface for r in rows)
    report = BenchReport(config=config, records=records)
    n_failed = sum(
        r.status in (TrialStatusValues.DEGRADED, TrialStatusValues.SKIPPED)
        for r in records
    )
    if n_failed > 0:
        logger.info(f'{n_failed} of {len(records)} trials degraded or skipped')
    return report

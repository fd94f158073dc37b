"""Enumerated values specific to the benchmark harness."""
from enum import Enum


class SweepValues(Enum):

    """Enumerated values for the grouping of benchmark trials."""

    PER_SURFACE = 'per-surface'
    PER_PARTITION = 'per-partition'
    OVERALL = 'overall'


class TrialStatusValues(Enum):

    """Enumerated values for the outcome of a benchmark trial."""

    KEPT = 'kept'
    EXCLUDED = 'excluded'
    DEGRADED = 'degraded'
    SKIPPED = 'skipped'

"""Exact minimum-area rectangle packing.

x-coordinates are assigned before y-coordinates under a cumulative
free-height profile; each complete x-assignment is transformed into a
perfect-packing instance whose y-coordinates are found by branching on
lowest-leftmost empty positions.  High-precision instances restrict box
dimensions and coordinates to subset sums of the rect dimensions.
"""

from .bbox import (
    EnumerationResult,
    anytime_search,
    enumerate_all_optimal,
    greedy_upper_bound,
    learned_height_floor,
    min_height_for_width,
    mutex_compatible,
)
from .benchmarks import BenchmarkFamily, generate, parse_custom
from .config import SolverConfig
from .model import (
    Box,
    Instance,
    Placement,
    PrecisionError,
    Rect,
    SearchStats,
    Solution,
    TimeLimitReached,
    effective_dims,
    make_instance,
    total_area,
)
from .verify import VerifyReport, brute_force_optimal, verify

__all__ = [
    "BenchmarkFamily",
    "Box",
    "EnumerationResult",
    "Instance",
    "Placement",
    "PrecisionError",
    "Rect",
    "SearchStats",
    "Solution",
    "SolverConfig",
    "TimeLimitReached",
    "VerifyReport",
    "anytime_search",
    "brute_force_optimal",
    "effective_dims",
    "enumerate_all_optimal",
    "generate",
    "greedy_upper_bound",
    "learned_height_floor",
    "make_instance",
    "min_height_for_width",
    "mutex_compatible",
    "parse_custom",
    "total_area",
    "verify",
]

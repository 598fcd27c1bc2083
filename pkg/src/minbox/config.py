"""Solver configuration and the deterministic time-budget hook."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance, TimeLimitReached, is_all_squares

# Above this dimension magnitude the instance is treated as high precision
# and dominance preprocessing is skipped (its gap sub-solver scales with
# the raw dimension values).
HIGH_PRECISION_DIM = 256

C_SQUARES = Fraction(35, 100)
C_DEFAULT = Fraction(55, 100)


@dataclass
class SolverConfig:
    c_param: Fraction | None = None        # None: 0.35 for all-square instances, else 0.55
    precision: str = "auto"                # auto | low | high
    first_only: bool = False               # stop at the first packing found
    max_solutions_per_box: int | None = None   # feasible boxes stop after this many packings
    time_limit: float | None = None        # seconds; checked every 2**16 nodes
    jobs: int = 1                          # parallel equal-area box testing
    filler_cell_cap: int = 4096            # unit fillers up to this much empty area
    collect_placements: bool = True        # False: feasibility + boxes only


def high_precision(cfg: SolverConfig, instance: Instance) -> bool:
    if cfg.precision == "high":
        return True
    if cfg.precision == "low":
        return False
    if cfg.precision != "auto":
        raise ValueError(f"unknown precision mode {cfg.precision!r}")
    if instance.scale > 1:
        return True
    return any(max(r.width, r.height) > HIGH_PRECISION_DIM for r in instance.rects)


def interval_ratio(cfg: SolverConfig, instance: Instance) -> Fraction:
    if cfg.c_param is not None:
        if not 0 < cfg.c_param <= 1:
            raise ValueError("c_param must be in (0, 1]")
        return cfg.c_param
    return C_SQUARES if is_all_squares(instance) else C_DEFAULT


class Budget:
    """Wall-clock limit enforced at deterministic node counts.

    Callers invoke :meth:`check` every 2**16 nodes so the cut points do not
    depend on timer jitter.
    """

    MASK = (1 << 16) - 1

    __slots__ = ("deadline",)

    def __init__(self, time_limit: float | None):
        self.deadline = None if time_limit is None else time.monotonic() + time_limit

    def check(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise TimeLimitReached()

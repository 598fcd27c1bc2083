"""Containment driver: x-assignments, perfect-packing transform, then the
corner search for y, for one instance inside one candidate box."""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import Budget, SolverConfig
from .model import Box, Solution
from .perfect import build_perfect
from .xcoord import XContext, XCoordSearch
from .ycoord import YSearch


@dataclass
class BoxOutcome:
    box: Box
    feasible: bool = False
    solutions: list[Solution] = field(default_factory=list)
    x_solutions: int = 0
    nodes_x: int = 0
    nodes_y: int = 0
    deepest_prefix: int = 0
    eq1_at_deepest: bool = False


def test_containment(
    ctx: XContext,
    box: Box,
    cfg: SolverConfig,
    budget: Budget | None = None,
) -> BoxOutcome:
    """Decide whether the instance fits in ``box``, collecting every packing
    found (or just the first when cfg.first_only)."""
    budget = budget or Budget(cfg.time_limit)
    outcome = BoxOutcome(box)
    ysums_mask = ctx.y_sums.mask if ctx.high else None
    cap = 1 if cfg.first_only else cfg.max_solutions_per_box
    from .perfect import restore

    xsearch = XCoordSearch(ctx, box, budget)

    def on_x(assignment) -> bool:
        perfect = build_perfect(ctx.instance, assignment, box, cfg.filler_cell_cap)
        if perfect is None:
            return True
        ysearch = YSearch(ctx.instance, perfect, ctx.order, ysums_mask, budget)

        def on_leaf(placements) -> bool:
            outcome.feasible = True
            outcome.solutions.append(restore(ctx.instance, perfect, placements))
            return cap is None or len(outcome.solutions) < cap

        ysearch.search(on_leaf)
        outcome.nodes_y += ysearch.nodes
        return cap is None or len(outcome.solutions) < cap

    xsearch.search(on_x)
    outcome.x_solutions = xsearch.n_solutions
    outcome.nodes_x = xsearch.nodes
    outcome.deepest_prefix = xsearch.deepest
    outcome.eq1_at_deepest = xsearch.eq1_at_deepest
    return outcome

"""Minimal bounding box enumeration.

Candidate boxes carry one live entry per width in a min-heap keyed by
(area, width).  Infeasible boxes reinsert one height step up: +1 in low
precision, the next admissible subset sum (mutex-filtered, possibly from
the learned prefix set) in high precision.  Once a feasible box pops,
every remaining candidate of equal area is still tested so all optimal
boxes are reported.
"""

from __future__ import annotations

import heapq
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .config import Budget, SolverConfig, high_precision
from .containment import BoxOutcome, test_containment
from .model import (
    Box,
    Instance,
    Placement,
    SearchStats,
    Solution,
    effective_dims,
    force_height_ge_width,
    total_area,
)
from .sums import SumSet, next_sum_at_or_above, precompute, unique_choice_generator
from .xcoord import XContext, order_rectangles


@dataclass(frozen=True)
class EnumerationResult:
    optimal_area: int
    optimal_boxes: tuple[Box, ...]       # descending width
    solutions: tuple[Solution, ...]
    stats: SearchStats
    tested_boxes: tuple[tuple[Box, bool], ...]  # (box, feasible) in test order


# ------------------------------------------------------------ greedy bound

def _greedy_order(instance: Instance):
    """Rects by decreasing area (ties: decreasing width), each in the
    orientation with the smaller height."""
    out = []
    for r in instance.rects:
        if r.filler:
            continue
        rot = r.orientable and r.height > r.width
        ew, eh = effective_dims(r, rot)
        out.append((r.id, ew, eh, rot))
    out.sort(key=lambda t: (-t[1] * t[2], -t[1], t[0]))
    return out


def greedy_upper_bound(instance: Instance) -> Solution:
    """First-fit packing in a strip of height = tallest rect, scanning
    candidate positions left to right, bottom to top.  Used as the initial
    area upper bound."""
    order = _greedy_order(instance)
    if not order:
        raise ValueError("empty instance")
    H = max(eh for _, _, eh, _ in order)
    placed: list[tuple[int, int, int, int]] = []   # x, y, w, h
    placements = []
    for rid, w, h, rot in order:
        xs = sorted({0} | {px + pw for px, _, pw, _ in placed})
        pos = None
        for x in xs:
            ys = sorted(
                {0}
                | {
                    py + ph
                    for px, py, pw, ph in placed
                    if px < x + w and x < px + pw
                }
            )
            for y in ys:
                if y + h > H:
                    continue
                if all(
                    x + w <= px or px + pw <= x or y + h <= py or py + ph <= y
                    for px, py, pw, ph in placed
                ):
                    pos = (x, y)
                    break
            if pos:
                break
        assert pos is not None
        placed.append((pos[0], pos[1], w, h))
        placements.append(Placement(rid, pos[0], pos[1], rot))
    width = max(px + pw for px, _, pw, _ in placed)
    placements.sort(key=lambda p: p.rect_id)
    return Solution(Box(width, H), tuple(placements))


# ------------------------------------------------------------ lower bounds

def _allowed_orients(instance: Instance, r, width: int):
    dims = [(r.width, r.height)]
    if r.orientable:
        dims.append((r.height, r.width))
    return [(w, h) for w, h in dims if w <= width]


def min_height_for_width(
    instance: Instance, width: int, y_sums: SumSet | None = None
) -> int | None:
    """Max of the tallest-rect, area, pairwise, and vertical-stacking lower
    bounds on the box height at this width; None when some rect cannot fit
    at all.  With ``y_sums`` the bound rounds up to the next subset sum."""
    rects = [r for r in instance.rects if not r.filler]
    allowed = []
    for r in rects:
        opts = _allowed_orients(instance, r, width)
        if not opts:
            return None
        allowed.append(opts)
    bound = max(min(h for _, h in opts) for opts in allowed)
    area = total_area(instance)
    bound = max(bound, -(-area // width))
    n = len(rects)
    for i in range(n):
        for j in range(i + 1, n):
            combos = [
                (wi + wj, hi + hj)
                for wi, hi in allowed[i]
                for wj, hj in allowed[j]
            ]
            if all(ws > width for ws, _ in combos):
                bound = max(bound, min(hs for _, hs in combos))
    stack = 0
    half_min = None
    for opts in allowed:
        if all(2 * w > width for w, _ in opts):
            stack += min(h for _, h in opts)
        elif all(2 * w >= width for w, _ in opts):
            h = min(h for _, h in opts)
            half_min = h if half_min is None else min(half_min, h)
    if stack:
        bound = max(bound, stack + (half_min or 0))
    if y_sums is not None:
        return next_sum_at_or_above(y_sums, bound)
    return bound


# ------------------------------------------------------------------ mutex

@lru_cache(maxsize=8)
def _mutex_ctx(instance: Instance):
    rects = [r for r in instance.rects if not r.filler]
    if instance.oriented:
        wchoices = tuple((r.width,) for r in rects)
        hchoices = tuple((r.height,) for r in rects)
        max_h = max(r.height for r in rects)
    else:
        both = tuple(
            (r.width,) if r.width == r.height else (r.width, r.height) for r in rects
        )
        wchoices = hchoices = both
        max_h = max(max(r.width, r.height) for r in rects)
    cap = sum(max(r.width, r.height) for r in rects)
    return wchoices, hchoices, cap, max_h


def mutex_compatible(width: int, height: int, instance: Instance) -> bool:
    """False exactly when the same set of two or more rects is the only
    generator of both the width (over widths) and the height (over
    heights): that set cannot form a horizontal chain and a vertical stack
    at once.  A height equal to the tallest rect is always compatible."""
    wchoices, hchoices, cap, max_h = _mutex_ctx(instance)
    if height == max_h:
        return True
    sw = unique_choice_generator(width, wchoices, cap)
    if sw is None or len(sw) < 2:
        return True
    sh = unique_choice_generator(height, hchoices, cap)
    if sh is None:
        return True
    return sw != sh


def learned_height_floor(instance: Instance, deepest_rect_index: int) -> SumSet:
    """Height sums over only the first ``deepest_rect_index + 1`` rects of
    the solver order; after an infeasible box, the next candidate height
    only needs to come from this smaller set."""
    order = order_rectangles(instance)
    prefix = order[: deepest_rect_index + 1]
    dims = []
    for rid in prefix:
        r = instance.rects[rid]
        if instance.oriented:
            dims.append(r.height)
        else:
            dims.append(r.width)
            dims.append(r.height)
    cap = sum(
        max(r.width, r.height) if not instance.oriented else r.height
        for r in instance.rects
        if not r.filler
    )
    return precompute(dims, cap)


# ------------------------------------------------------------- enumeration

def _widest_required(instance: Instance) -> int:
    return max(
        min(r.width, r.height) if r.orientable else r.width
        for r in instance.rects
        if not r.filler
    )


def _seed_heights(instance, ctx, width, symm):
    """Initial admissible height for one width, or None."""
    h0 = min_height_for_width(instance, width, ctx.y_sums if ctx.high else None)
    if h0 is None:
        return None
    if symm and h0 < width:
        h0 = (
            next_sum_at_or_above(ctx.y_sums, width) if ctx.high else width
        )
        if h0 is None:
            return None
    if ctx.high:
        while h0 is not None and not mutex_compatible(width, h0, instance):
            h0 = next_sum_at_or_above(ctx.y_sums, h0 + 1)
    return h0


def _next_height(instance, ctx, width, outcome: BoxOutcome, prev_h: int):
    """Height for the reinserted candidate after an infeasible test."""
    if not ctx.high:
        return prev_h + 1
    n = len(ctx.order)
    if outcome.eq1_at_deepest or outcome.deepest_prefix >= n:
        base = ctx.y_sums
    else:
        base = learned_height_floor(instance, outcome.deepest_prefix)
    h = next_sum_at_or_above(base, prev_h + 1)
    while h is not None and not mutex_compatible(width, h, instance):
        h = next_sum_at_or_above(base, h + 1)
    return h


def _test_box_worker(args):
    ctx, box, cfg = args
    return test_containment(ctx, box, cfg)


def enumerate_all_optimal(
    instance: Instance, cfg: SolverConfig | None = None
) -> EnumerationResult:
    """All minimum-area boxes (and every packing found for each), testing
    candidates in non-decreasing area order."""
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    budget = Budget(cfg.time_limit)
    stats = SearchStats()
    ctx = XContext(instance, cfg)
    greedy = greedy_upper_bound(instance)
    ub = greedy.box.area
    symm = force_height_ge_width(instance)
    widest = _widest_required(instance)

    if ctx.high:
        widths = [
            v for v in ctx.x_sums.values if widest <= v <= greedy.box.width
        ]
    else:
        widths = range(widest, greedy.box.width + 1)
    heap: list[tuple[int, int, int]] = []
    for w in widths:
        h0 = _seed_heights(instance, ctx, w, symm)
        if h0 is not None and w * h0 <= ub:
            heapq.heappush(heap, (w * h0, w, h0))

    optimal_area: int | None = None
    boxes: list[Box] = []
    per_box_solutions: dict[Box, list[Solution]] = {}
    tested: list[tuple[Box, bool]] = []
    pool = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 else None

    def handle(box: Box, outcome: BoxOutcome):
        nonlocal optimal_area
        stats.boxes_tested += 1
        stats.x_solutions += outcome.x_solutions
        stats.nodes_x += outcome.nodes_x
        stats.nodes_y += outcome.nodes_y
        tested.append((box, outcome.feasible))
        if outcome.feasible:
            if optimal_area is None:
                optimal_area = box.area
            boxes.append(box)
            per_box_solutions[box] = outcome.solutions
        else:
            nh = _next_height(instance, ctx, box.width, outcome, box.height)
            cap = optimal_area if optimal_area is not None else ub
            if nh is not None and box.width * nh <= cap:
                heapq.heappush(heap, (box.width * nh, box.width, nh))

    try:
        while heap:
            if optimal_area is not None and heap[0][0] > optimal_area:
                break
            # pop the whole batch of equal-(area, ...) candidates up front
            # only when testing in parallel; sequentially one at a time
            batch = [heapq.heappop(heap)]
            if pool is not None:
                area0 = batch[0][0]
                while heap and heap[0][0] == area0:
                    batch.append(heapq.heappop(heap))
            if pool is not None and len(batch) > 1:
                jobs = [(ctx, Box(w, h), cfg) for _, w, h in batch]
                for (a, w, h), outcome in zip(batch, pool.map(_test_box_worker, jobs)):
                    handle(Box(w, h), outcome)
                    if cfg.first_only and outcome.feasible:
                        break
            else:
                a, w, h = batch[0]
                outcome = test_containment(ctx, Box(w, h), cfg, budget)
                handle(Box(w, h), outcome)
            if cfg.first_only and optimal_area is not None:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    if optimal_area is None:
        raise RuntimeError("candidate queue exhausted below the greedy bound")
    boxes.sort(key=lambda b: -b.width)
    solutions: list[Solution] = []
    for b in boxes:
        solutions.extend(per_box_solutions.get(b, ()))
    stats.cpu_time = time.perf_counter() - t0
    solutions = [Solution(s.box, s.placements, stats) for s in solutions]
    return EnumerationResult(
        optimal_area, tuple(boxes), tuple(solutions), stats, tuple(tested)
    )


def anytime_search(
    instance: Instance, cfg: SolverConfig | None = None
) -> Iterator[Solution]:
    """Width-decrement / height-increment walk from the greedy box, yielding
    each strictly improving solution; the final one is optimal when run to
    completion."""
    cfg = cfg or SolverConfig()
    inner = SolverConfig(
        c_param=cfg.c_param,
        precision=cfg.precision,
        first_only=True,
        time_limit=cfg.time_limit,
        filler_cell_cap=cfg.filler_cell_cap,
    )
    budget = Budget(cfg.time_limit)
    ctx = XContext(instance, inner)
    greedy = greedy_upper_bound(instance)
    best = greedy.box.area
    yield greedy
    widest = _widest_required(instance)
    W, H = greedy.box.width - 1, greedy.box.height
    while W >= widest:
        if W * H >= best:
            W -= 1
            continue
        outcome = test_containment(ctx, Box(W, H), inner, budget)
        if outcome.feasible:
            best = W * H
            yield outcome.solutions[0]
            W -= 1
        else:
            H += 1

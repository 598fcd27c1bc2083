"""Perfect-packing transform: given a complete x-assignment, add items so
the remaining y-problem has zero empty space.

Small residuals become unit fillers.  Large residuals (scaled instances)
instead widen rects into columns that are provably empty at their rows and
consolidate what is left into height-1 strips, one batch per column run, so
the item count stays proportional to the number of rects.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Box, Instance, Placement, Solution, effective_dims, total_area
from .xcoord import XAssignment, order_rectangles


@dataclass(frozen=True)
class PerfectRect:
    """An original rect inside the perfect instance, possibly widened."""

    rect_id: int
    x: int
    width: int
    height: int
    rotated: bool
    orig_x: int
    orig_width: int


@dataclass(frozen=True)
class Strip:
    """A width x 1 space-filling item pinned to one column run."""

    x: int
    width: int


@dataclass(frozen=True)
class PerfectInstance:
    box: Box
    originals: tuple[PerfectRect, ...]
    strips: tuple[Strip, ...]
    filler_count: int

    @property
    def item_area(self) -> int:
        return (
            sum(r.width * r.height for r in self.originals)
            + sum(s.width for s in self.strips)
            + self.filler_count
        )


def _effective(instance: Instance, assignment: XAssignment):
    out = []
    for r in instance.rects:
        if r.filler:
            continue
        rot = assignment.rots[r.id]
        ew, eh = effective_dims(r, rot)
        out.append((r.id, assignment.xs[r.id], ew, eh, rot))
    return out


def transform_units(instance: Instance, assignment: XAssignment, box: Box) -> PerfectInstance:
    """Unit-filler transform: originals untouched plus exactly
    box.area - total_area 1x1 fillers."""
    originals = tuple(
        PerfectRect(rid, x, ew, eh, rot, x, ew)
        for rid, x, ew, eh, rot in _effective(instance, assignment)
    )
    return PerfectInstance(box, originals, (), box.area - total_area(instance))


def _spans_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return max(a[0], b[0]) < min(a[1], b[1])


def widen_rects(
    instance: Instance, assignment: XAssignment, box: Box
) -> tuple[PerfectRect, ...]:
    """Widen each rect (in solver order, rightward before leftward) through
    adjacent column runs whose every covering rect already overlaps it in
    some column.

    Column overlap forces row-disjointness in every completion, so those
    runs are guaranteed empty at the widened rect's rows.
    """
    eff = _effective(instance, assignment)
    spans: dict[int, list[int]] = {rid: [x, x + ew] for rid, x, ew, eh, rot in eff}
    heights = {rid: eh for rid, x, ew, eh, rot in eff}
    meta = {rid: (x, ew, rot) for rid, x, ew, eh, rot in eff}
    W = box.width

    def boundaries() -> list[int]:
        bs = {0, W}
        for a, b in spans.values():
            bs.add(a)
            bs.add(b)
        return sorted(bs)

    def coverers(col: int, skip: int) -> list[int]:
        return [q for q, (a, b) in spans.items() if q != skip and a <= col < b]

    for rid in order_rectangles(instance):
        if rid not in spans:
            continue
        span = spans[rid]
        while span[1] < W:
            bs = boundaries()
            nxt = min(b for b in bs if b > span[1])
            if any(
                not _spans_overlap(spans[q], span) for q in coverers(span[1], rid)
            ):
                break
            span[1] = nxt
        while span[0] > 0:
            bs = boundaries()
            prev = max(b for b in bs if b < span[0])
            if any(
                not _spans_overlap(spans[q], span) for q in coverers(span[0] - 1, rid)
            ):
                break
            span[0] = prev
    out = []
    for rid, x, ew, eh, rot in eff:
        a, b = spans[rid]
        out.append(PerfectRect(rid, a, b - a, eh, rot, x, ew))
    return tuple(out)


def _runs_with_residuals(box: Box, widened: tuple[PerfectRect, ...]):
    bs = {0, box.width}
    for r in widened:
        bs.add(r.x)
        bs.add(r.x + r.width)
    edges = sorted(bs)
    runs = []
    for a, b in zip(edges, edges[1:]):
        covering = sum(r.height for r in widened if r.x <= a < r.x + r.width)
        runs.append((a, b - a, box.height - covering))
    return runs


def consolidate_strips(
    instance: Instance,
    assignment: XAssignment,
    box: Box,
    widened: tuple[PerfectRect, ...],
) -> tuple[Strip, ...]:
    """Residual empty area as height-1 strips, one strip per empty row of
    each column run.  Runs never cross a rect footprint boundary, so every
    y-arrangement of the rects stays reachable."""
    strips = []
    for x, width, residual in _runs_with_residuals(box, widened):
        if residual < 0:
            raise ValueError("cumulative overflow: run taller than the box")
        strips.extend([Strip(x, width)] * residual)
    return tuple(strips)


def build_perfect(
    instance: Instance,
    assignment: XAssignment,
    box: Box,
    filler_cell_cap: int,
) -> PerfectInstance | None:
    """Transform for the y-stage; None when widening proves this
    x-assignment admits no completion."""
    empty = box.area - total_area(instance)
    if empty <= filler_cell_cap:
        return transform_units(instance, assignment, box)
    widened = widen_rects(instance, assignment, box)
    runs = _runs_with_residuals(box, widened)
    if any(res < 0 for _, _, res in runs):
        return None
    strips = []
    for x, width, residual in runs:
        strips.extend([Strip(x, width)] * residual)
    return PerfectInstance(box, widened, tuple(strips), 0)


def restore(
    instance: Instance,
    perfect: PerfectInstance,
    placements: dict[int, tuple[int, bool]],
) -> Solution:
    """Map a perfect-instance solution back to the original rects.

    ``placements`` gives (y, rotated) per rect id; fillers and strips are
    dropped, widened rects return to their original x and width.  The
    result is re-verified; failure indicates a solver bug.
    """
    from .verify import verify

    out = []
    for pr in perfect.originals:
        y, rot = placements[pr.rect_id]
        out.append(Placement(pr.rect_id, pr.orig_x, y, rot))
    sol = Solution(perfect.box, tuple(sorted(out, key=lambda p: p.rect_id)))
    report = verify(instance, sol)
    if not report.valid:
        raise AssertionError(f"restored solution failed verification: {report.violations}")
    return sol

"""y-stage: assign y-coordinates by branching on which item occupies each
lowest-leftmost empty position.

In a perfect packing the first empty cell (scanning columns left to right,
rows bottom to top) must be the lower-left corner of some item, so the
search branches over the items that can sit there, drawing into a bitmap.
Duplicate candidates are tried once per position.  Columns are compressed
into runs between footprint boundaries whenever no unit fillers exist,
since then every item covers whole runs; cells whose only possible
occupant is a filler or strip are filled iteratively, so recursion depth
stays proportional to the number of rects.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Budget
from .model import Box, Instance, Solution
from .perfect import PerfectInstance


class OccupancyGrid:
    """W x H cell bitmap; one int bitmask of occupied rows per column."""

    __slots__ = ("width", "height", "cols", "full")

    def __init__(self, box: Box):
        self.width = box.width
        self.height = box.height
        self.cols = [0] * box.width
        self.full = (1 << box.height) - 1

    def draw(self, x: int, y: int, w: int, h: int) -> None:
        m = ((1 << h) - 1) << y
        for c in range(x, x + w):
            self.cols[c] |= m

    def erase(self, x: int, y: int, w: int, h: int) -> None:
        m = ~(((1 << h) - 1) << y)
        for c in range(x, x + w):
            self.cols[c] &= m

    def fits(self, x: int, y: int, w: int, h: int) -> bool:
        if x + w > self.width or y + h > self.height:
            return False
        m = ((1 << h) - 1) << y
        return not any(self.cols[c] & m for c in range(x, x + w))

    def popcount(self) -> int:
        return sum(c.bit_count() for c in self.cols)


def next_corner(grid: OccupancyGrid) -> tuple[int, int] | None:
    """First empty cell scanning x ascending, then y ascending; None when
    the grid is full."""
    full = grid.full
    for x, col in enumerate(grid.cols):
        if col != full:
            inv = ~col & full
            return x, (inv & -inv).bit_length() - 1
    return None


def candidates(
    corner: tuple[int, int],
    perfect: PerfectInstance,
    grid: OccupancyGrid,
    placed_ids: set[int],
    y_sums_mask: int | None = None,
    placed_strips: int = 0,
    placed_fillers: int = 0,
):
    """Items that may occupy ``corner``: unplaced originals whose fixed x
    matches and whose footprint is free (high precision additionally
    requires the corner y to be a subset sum for originals), plus one strip
    or filler representative.  Duplicates collapse to one entry.

    A filler is eligible only while its column still has slack: the fixed
    x-footprints already determine exactly how many filler cells each
    column receives.
    """
    x, y = corner
    out = []
    seen = set()
    for pr in perfect.originals:
        if pr.rect_id in placed_ids or pr.x != x:
            continue
        key = (pr.width, pr.height)
        if key in seen:
            continue
        seen.add(key)
        if y_sums_mask is not None and not (y_sums_mask >> y) & 1:
            continue
        if grid.fits(pr.x, y, pr.width, pr.height):
            out.append(pr)
    strip_seen = set()
    remaining = list(perfect.strips)[placed_strips:]
    for s in remaining:
        if (s.x, s.width) in strip_seen:
            continue
        strip_seen.add((s.x, s.width))
        if s.x == x and grid.fits(s.x, y, s.width, 1):
            out.append(s)
    if placed_fillers < perfect.filler_count:
        free = grid.height - (grid.cols[x].bit_count())
        pending = sum(
            pr.height
            for pr in perfect.originals
            if pr.rect_id not in placed_ids and pr.x <= x < pr.x + pr.width
        )
        if free - pending > 0:
            out.append("filler")
    return out


@dataclass
class _Item:
    first: int            # first run index
    last: int             # last run index (inclusive)
    height: int
    order_pos: int
    rect_id: int
    rotated: bool


class YSearch:
    """Exhaustive corner search over one perfect instance."""

    def __init__(
        self,
        instance: Instance,
        perfect: PerfectInstance,
        order: list[int],
        y_sums_mask: int | None,
        budget: Budget | None = None,
    ):
        self.instance = instance
        self.perfect = perfect
        self.budget = budget or Budget(None)
        self.y_sums_mask = y_sums_mask
        self.nodes = 0
        box = perfect.box
        W, H = box.width, box.height
        self.H = H
        if perfect.filler_count:
            # unit columns: fillers may land anywhere
            run_of = list(range(W))
            starts = list(range(W))
        else:
            edges = {0, W}
            for r in perfect.originals:
                edges.add(r.x)
                edges.add(r.x + r.width)
            for s in perfect.strips:
                edges.add(s.x)
                edges.add(s.x + s.width)
            starts = sorted(edges - {W})
            run_of = []
            for i, a in enumerate(starts):
                b = starts[i + 1] if i + 1 < len(starts) else W
                run_of.extend([i] * (b - a))
        self.run_starts = starts
        self.k = len(starts)
        order_pos = {rid: i for i, rid in enumerate(order)}
        items = []
        for pr in perfect.originals:
            items.append(
                _Item(
                    run_of[pr.x],
                    run_of[pr.x + pr.width - 1],
                    pr.height,
                    order_pos[pr.rect_id],
                    pr.rect_id,
                    pr.rotated,
                )
            )
        items.sort(key=lambda it: it.order_pos)
        self.items = items
        self.by_run: list[list[int]] = [[] for _ in range(self.k)]
        for idx, it in enumerate(items):
            self.by_run[it.first].append(idx)
        self.strips_init = [0] * self.k
        for s in perfect.strips:
            self.strips_init[run_of[s.x]] += 1
        if perfect.filler_count:
            # the x-footprints fix the filler count of every column, so
            # fillers become per-column strip budgets (lossless)
            coverage = [0] * W
            for pr in perfect.originals:
                for c in range(pr.x, pr.x + pr.width):
                    coverage[c] += pr.height
            self.infeasible = any(cov > H for cov in coverage)
            for c in range(W):
                self.strips_init[c] += H - coverage[c]
        else:
            self.infeasible = False

    def search(self, emit) -> None:
        """Depth-first over corners; ``emit(placements)`` gets a dict
        rect_id -> (y, rotated) per leaf and returns False to stop."""
        if self.infeasible:
            return
        k = self.k
        H = self.H
        full = (1 << H) - 1
        rmask = [0] * k
        items = self.items
        n_items = len(items)
        by_run = self.by_run
        strips_left = self.strips_init[:]
        total_strips = sum(strips_left)
        ysums = self.y_sums_mask
        placed = [False] * n_items
        ys = [0] * n_items
        budget = self.budget
        state = {"stop": False, "strips": total_strips}

        def min_unplaced_height() -> int:
            hs = [items[i].height for i in range(n_items) if not placed[i]]
            return min(hs) if hs else 1

        def rec(imin: int) -> None:
            # iterate forced moves (cells only a strip can take), journaling
            # bit flips for the unwind
            journal: list[tuple[int, int]] = []
            used_strips: list[int] = []

            def unwind():
                for j, bit in journal:
                    rmask[j] &= ~bit
                for j in used_strips:
                    strips_left[j] += 1
                state["strips"] += len(used_strips)

            i = imin
            while True:
                while i < k and rmask[i] == full:
                    # anything pinned to a filled run can never be placed
                    if strips_left[i]:
                        unwind()
                        return
                    for idx in by_run[i]:
                        if not placed[idx]:
                            unwind()
                            return
                    i += 1
                if i == k:
                    result = {
                        it.rect_id: (ys[n], it.rotated) for n, it in enumerate(items)
                    }
                    if emit(result) is False:
                        state["stop"] = True
                    unwind()
                    return
                inv = ~rmask[i] & full
                y = (inv & -inv).bit_length() - 1
                self.nodes += 1
                if self.nodes & Budget.MASK == 0:
                    budget.check()
                # originals that may corner here
                cands = []
                seen = set()
                for idx in by_run[i]:
                    if placed[idx]:
                        continue
                    it = items[idx]
                    key = (it.last, it.height)
                    if key in seen:
                        continue
                    seen.add(key)
                    if ysums is not None and not (ysums >> y) & 1:
                        continue
                    if y + it.height > H:
                        continue
                    m = ((1 << it.height) - 1) << y
                    if any(rmask[j] & m for j in range(i, it.last + 1)):
                        continue
                    cands.append((idx, m))
                bit = 1 << y
                if not cands:
                    # forced: only a strip can cover this cell
                    if strips_left[i]:
                        strips_left[i] -= 1
                        state["strips"] -= 1
                        used_strips.append(i)
                        rmask[i] |= bit
                        journal.append((i, bit))
                        continue
                    unwind()
                    return
                break

            # branch: originals in solver order, then the strip/filler class
            for idx, m in cands:
                it = items[idx]
                self.nodes += 1
                if self.nodes & Budget.MASK == 0:
                    budget.check()
                span = range(i, it.last + 1)
                for j in span:
                    rmask[j] |= m
                placed[idx] = True
                ys[idx] = y
                # pocket check: a free gap shorter than every remaining item
                # strictly below the corner row can never be covered
                dead = False
                if it.last > i and y > 0 and state["strips"] == 0:
                    minh = min_unplaced_height()
                    if minh > 1:
                        for j in range(i + 1, it.last + 1):
                            below = rmask[j] & (bit - 1)
                            gap = y - below.bit_length()
                            if 0 < gap < minh:
                                dead = True
                                break
                if not dead:
                    rec(i)
                placed[idx] = False
                for j in span:
                    rmask[j] &= ~m
                if state["stop"]:
                    unwind()
                    return
            if strips_left[i]:
                self.nodes += 1
                strips_left[i] -= 1
                state["strips"] -= 1
                rmask[i] |= bit
                rec(i)
                rmask[i] &= ~bit
                strips_left[i] += 1
                state["strips"] += 1
            unwind()

        rec(0)


def solve_y(
    instance: Instance,
    perfect: PerfectInstance,
    order: list[int],
    y_sums_mask: int | None = None,
) -> list[Solution]:
    """All y-completions of one perfect instance, restored to the original
    rects."""
    from .perfect import restore

    search = YSearch(instance, perfect, order, y_sums_mask)
    out: list[Solution] = []

    def on_leaf(placements):
        out.append(restore(instance, perfect, placements))
        return True

    search.search(on_leaf)
    return out

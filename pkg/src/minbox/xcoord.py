"""x-stage of the containment search.

Rects first commit to an x-interval (charging the compulsory part of their
footprint to a per-column free-height profile), then to a single x.  After
every commit the wasted-space constraint is checked: for each height h, the
free cells in columns of free height >= h must cover the area of pending
rects of height >= h.  Dominated wall offsets are pruned, and branching
interleaves interval and fixed-x variables by the largest guaranteed
reduction of free space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import HIGH_PRECISION_DIM, Budget, SolverConfig, high_precision, interval_ratio
from .model import Box, Instance, Rect, effective_dims, is_all_squares
from .sums import SumSet, dynamic_x_sums, separate_axis_sets


# ---------------------------------------------------------------- profile

class FreeHeightProfile:
    """Per-column free height plus a count-by-height histogram.

    ``free[c]`` is the box height minus the heights committed at column c;
    ``cnt[i]`` counts columns whose free height is exactly i, so the
    classic histogram value v_i equals i * cnt[i].
    """

    __slots__ = ("width", "height", "free", "cnt")

    def __init__(self, box: Box):
        self.width = box.width
        self.height = box.height
        self.free = [box.height] * box.width
        self.cnt = [0] * (box.height + 1)
        self.cnt[box.height] = box.width

    def commit_range(self, a: int, b: int, dh: int) -> bool:
        """Subtract ``dh`` from columns [a, b); no mutation on violation."""
        free = self.free
        if a < b and min(free[a:b]) < dh:
            return False
        cnt = self.cnt
        for c in range(a, b):
            v = free[c]
            cnt[v] -= 1
            v -= dh
            free[c] = v
            cnt[v] += 1
        return True

    def uncommit_range(self, a: int, b: int, dh: int) -> None:
        free = self.free
        cnt = self.cnt
        for c in range(a, b):
            v = free[c]
            cnt[v] -= 1
            v += dh
            free[c] = v
            cnt[v] += 1

    def histogram(self) -> list[int]:
        """v_1..v_H: empty cells living in columns of each free height."""
        return [i * self.cnt[i] for i in range(1, self.height + 1)]


def check_wasted_space(profile: FreeHeightProfile, pending: list[tuple[int, int]]) -> bool:
    """True iff every height class of pending (height, area) demands fits
    within the free cells of columns at least that tall."""
    H = profile.height
    dem = [0] * (H + 1)
    for h, area in pending:
        dem[h] += area
    cnt = profile.cnt
    need = space = 0
    for h in range(H, 0, -1):
        need += dem[h]
        space += h * cnt[h]
        if need > space:
            return False
    return True


# ------------------------------------------------------------- dominance

def _pack_all_fit(items: tuple[tuple[int, int, bool], ...], W: int, H: int) -> bool:
    """Can every (w, h, orientable) item be packed inside W x H?

    Exhaustive search over lowest-leftmost empty cells; a cell may also be
    left permanently empty, charged against the waste budget, so
    non-perfect packings are covered.
    """
    waste = W * H - sum(w * h for w, h, _ in items)
    if waste < 0:
        return False
    full = (1 << H) - 1
    cols = [0] * W
    items = tuple(sorted(items, key=lambda t: (-t[0] * t[1], -t[0])))
    n = len(items)

    def rec(placed_mask: int, start: int, waste: int) -> bool:
        if placed_mask == (1 << n) - 1:
            return True
        c = start
        while c < W and cols[c] == full:
            c += 1
        if c == W:
            return False
        y = ((~cols[c] & full) & -(~cols[c] & full)).bit_length() - 1
        tried = set()
        for i in range(n):
            if placed_mask >> i & 1:
                continue
            w, h, orientable = items[i]
            for ww, hh in ((w, h), (h, w)) if orientable and w != h else ((w, h),):
                if (ww, hh) in tried:
                    continue
                tried.add((ww, hh))
                if c + ww > W or y + hh > H:
                    continue
                m = ((1 << hh) - 1) << y
                if any(cols[j] & m for j in range(c, c + ww)):
                    continue
                for j in range(c, c + ww):
                    cols[j] |= m
                ok = rec(placed_mask | (1 << i), c, waste)
                for j in range(c, c + ww):
                    cols[j] &= ~m
                if ok:
                    return True
        if waste == 0:
            return False
        # leave this cell empty
        cols[c] |= 1 << y
        ok = rec(placed_mask, c, waste - 1)
        cols[c] &= ~(1 << y)
        return ok

    return rec(0, 0, waste)


@lru_cache(maxsize=4096)
def _gap_packable(items: tuple[tuple[int, int, bool], ...], W: int, H: int) -> bool:
    return _pack_all_fit(items, W, H)


@dataclass(frozen=True)
class DominanceTable:
    """Maximal dominated wall-offset prefix per (rect id, rotated)."""

    prefixes: dict[tuple[int, bool], int]

    def prefix(self, rect_id: int, rotated: bool = False) -> int:
        return self.prefixes.get((rect_id, rotated), 0)


def build_dominance(instance: Instance, box: Box | None = None) -> DominanceTable:
    """Dominated offsets, generated per instance.

    Offset g (a gap of g columns against the wall) is dominated when every
    other rect that can occupy gap columns fits the g x h_r gap entirely
    and all such rects pack jointly inside it.  A rect that fits the gap
    width in some orientation but can only protrude vertically kills the
    condition.  Gaps are explored up to the largest rect dimension;
    dominance is skipped entirely for high-precision magnitudes, where the
    gap sub-solver would be too costly.
    """
    prefixes: dict[tuple[int, bool], int] = {}
    rects = [r for r in instance.rects if not r.filler]
    if not rects:
        return DominanceTable(prefixes)
    max_dim = max(max(r.width, r.height) for r in rects)
    if max_dim > HIGH_PRECISION_DIM:
        return DominanceTable(prefixes)
    for r in rects:
        others = [s for s in rects if s.id != r.id]
        rotations = (False, True) if r.orientable else (False,)
        for rot in rotations:
            _, band = effective_dims(r, rot)
            k = 0
            for g in range(1, max_dim + 1):
                fits = []
                eliminated = False
                for s in others:
                    sdims = ((s.width, s.height), (s.height, s.width)) if s.orientable else ((s.width, s.height),)
                    can_enter = any(sw <= g for sw, _ in sdims)
                    if not can_enter:
                        continue
                    if any(sw <= g and sh <= band for sw, sh in sdims):
                        fits.append((s.width, s.height, s.orientable))
                    else:
                        eliminated = True
                        break
                if eliminated or not _gap_packable(tuple(sorted(fits)), g, band):
                    break
                k = g
            prefixes[(r.id, rot)] = k
    return DominanceTable(prefixes)


# ------------------------------------------------------------- intervals

def plan_intervals(
    rect: Rect,
    box: Box,
    c_param: Fraction,
    dominance: DominanceTable,
    rotated: bool = False,
) -> list[tuple[int, int]]:
    """Interval values for one rect and orientation.

    The domain is [0, W - w] minus the dominated offsets.  When dominated
    offsets exist the degenerate interval [0, 0] comes first; the rest of
    the domain is split into contiguous intervals of near-equal size, the
    count induced by the nominal size ceil(c_param * w).
    """
    if not 0 < c_param <= 1:
        raise ValueError("c_param must be in (0, 1]")
    ew, _ = effective_dims(rect, rotated)
    if ew > box.width:
        return []
    xmax = box.width - ew
    k = min(dominance.prefix(rect.id, rotated), xmax)
    out: list[tuple[int, int]] = []
    lo = 0
    if k > 0:
        out.append((0, 0))
        lo = k + 1
    nvals = xmax - lo + 1
    if nvals > 0:
        size = max(1, math.ceil(c_param * ew))
        branches = -(-nvals // size)
        base, extra = divmod(nvals, branches)
        start = lo
        for i in range(branches):
            length = base + (1 if i < extra else 0)
            out.append((start, start + length - 1))
            start += length
    return out


# ------------------------------------------------- spec-level commit API

@dataclass
class XVar:
    """Assignment state of one rect on the x axis."""

    rect: Rect
    state: str = "unassigned"            # unassigned | interval | fixed
    lo: int = 0
    hi: int = 0
    x: int = 0
    rotated: bool = False


def commit(var: XVar, value, profile: FreeHeightProfile):
    """Apply an interval or fixed-x value; returns an undo token or None on
    a cumulative violation (nothing mutated)."""
    ew, eh = effective_dims(var.rect, var.rotated)
    if isinstance(value, tuple):
        lo, hi = value
        a, b = hi, lo + ew
        if a >= b:
            a = b = 0
        if not profile.commit_range(a, b, eh):
            return None
        prev = (var.state, var.lo, var.hi, var.x)
        var.state, var.lo, var.hi = "interval", lo, hi
        return ("interval", a, b, eh, prev, var)
    x = int(value)
    if var.state == "interval":
        ca, cb = var.hi, var.lo + ew
        if ca >= cb:
            ca = cb = x
        left = (x, min(ca, x + ew))
        right = (max(cb, x), x + ew)
    else:
        ca = cb = 0
        left = (x, x + ew)
        right = (x + ew, x + ew)
    la, lb = left
    ra, rb = right
    free = profile.free
    if (la < lb and min(free[la:lb]) < eh) or (ra < rb and min(free[ra:rb]) < eh):
        return None
    profile.commit_range(la, lb, eh)
    profile.commit_range(ra, rb, eh)
    prev = (var.state, var.lo, var.hi, var.x)
    var.state, var.x = "fixed", x
    return ("fixed", (la, lb), (ra, rb), eh, prev, var)


def undo(token, profile: FreeHeightProfile) -> None:
    """Exactly reverse a commit."""
    if token[0] == "interval":
        _, a, b, eh, prev, var = token
        profile.uncommit_range(a, b, eh)
    else:
        _, (la, lb), (ra, rb), eh, prev, var = token
        profile.uncommit_range(la, lb, eh)
        profile.uncommit_range(ra, rb, eh)
    var.state, var.lo, var.hi, var.x = prev


# ------------------------------------------------------------- ordering

def order_rectangles(instance: Instance, box: Box | None = None) -> list[int]:
    """Fixed branching order: ascending estimated branching factor.

    Oriented instances order by decreasing width, unoriented ones by the
    ascending inverse-harmonic key (w + h) / (w * h); all-square instances
    by decreasing side.  Ties break by rect id.
    """
    rects = [r for r in instance.rects if not r.filler]
    if instance.oriented or is_all_squares(instance):
        key = lambda r: (-r.width, r.id)
    else:
        key = lambda r: (Fraction(r.width + r.height, r.width * r.height), r.id)
    return [r.id for r in sorted(rects, key=key)]


# ---------------------------------------------------------------- search

@dataclass(frozen=True)
class XAssignment:
    """Complete x-solution: per rect id, the fixed x and orientation."""

    xs: tuple[int, ...]
    rots: tuple[bool, ...]


class XContext:
    """Per-instance data shared across all boxes: ordering, dominance, the
    interval ratio, and (for high precision) the static axis sum sets."""

    def __init__(self, instance: Instance, cfg: SolverConfig | None = None):
        cfg = cfg or SolverConfig()
        self.instance = instance
        self.cfg = cfg
        self.order = order_rectangles(instance)
        self.dominance = build_dominance(instance)
        self.c = interval_ratio(cfg, instance)
        self.high = high_precision(cfg, instance)
        if self.high:
            wcap = sum(max(r.width, r.height) for r in instance.rects)
            probe = Box(wcap, wcap)
            self.x_sums, self.y_sums = separate_axis_sets(instance, probe)
        else:
            self.x_sums = self.y_sums = None


class XCoordSearch:
    """Depth-first x-assignment search for one instance inside one box."""

    def __init__(self, ctx: XContext, box: Box, budget: Budget | None = None):
        self.ctx = ctx
        self.box = box
        self.budget = budget or Budget(None)
        inst = ctx.instance
        self.n = len(ctx.order)
        self.rects = [inst.rects[rid] for rid in ctx.order]
        W, H = box.width, box.height
        # Interval plans per order position: (rot, lo, hi, ew, eh, ca, cb, comp_area)
        self.plans: list[list[tuple]] = []
        self.first_reduction: list[int] = []
        self.blocked_at: int | None = None
        for pos, r in enumerate(self.rects):
            vals = []
            for rot in (False, True) if r.orientable else (False,):
                ew, eh = effective_dims(r, rot)
                if ew > W or eh > H:
                    continue
                for lo, hi in plan_intervals(r, box, ctx.c, ctx.dominance, rotated=rot):
                    ca, cb = hi, lo + ew
                    if ca >= cb:
                        ca = cb = 0
                    if ctx.high and not self._sums_in(lo, min(hi, W - ew)):
                        continue
                    vals.append((rot, lo, hi, ew, eh, ca, cb, (cb - ca) * eh))
            if not vals and self.blocked_at is None:
                self.blocked_at = pos
            self.plans.append(vals)
            self.first_reduction.append(vals[0][7] if vals else 0)
        self.nodes = 0
        self.n_solutions = 0
        self.deepest = 0
        self.eq1_deepest = -1

    def _sums_in(self, lo: int, hi: int) -> bool:
        if hi < lo:
            return False
        mask = self.ctx.x_sums.mask
        seg = (mask >> lo) & ((1 << (hi - lo + 1)) - 1)
        return seg != 0

    def search(self, emit) -> None:
        """Run the search, calling ``emit(assignment)`` at every complete
        x-solution; emit returns False to stop early."""
        if self.blocked_at is not None:
            self.deepest = self.blocked_at
            return
        ctx, box, budget = self.ctx, self.box, self.budget
        W, H = box.width, box.height
        n = self.n
        rects = self.rects
        plans = self.plans
        first_reduction = self.first_reduction
        high = ctx.high
        order = ctx.order

        w_ = [r.width for r in rects]
        h_ = [r.height for r in rects]
        area_ = [r.width * r.height for r in rects]
        base_h = [min(r.width, r.height) if r.orientable else r.height for r in rects]
        orientable_ = [r.orientable for r in rects]

        free = [H] * W
        cnt = [0] * (H + 1)
        cnt[H] = W
        sv = [0] * (H + 1)           # sv[i] = i * cnt[i], kept incrementally
        sv[H] = H * W
        dem = [0] * (H + 1)
        for p in range(n):
            dem[base_h[p]] += area_[p]

        status = [0] * n            # 0 unassigned, 1 interval, 2 fixed
        cur = [None] * n            # active plan tuple while interval/fixed
        residual = [0] * n
        xs = [0] * n
        open_fixed: list[int] = []
        stop = False
        nodes = 0
        deepest = 0
        eq1_deepest = -1
        mask_budget = Budget.MASK

        def wasted_ok() -> bool:
            need = space = 0
            for d, s in zip(reversed(dem), reversed(sv)):
                need += d
                space += s
                if need > space:
                    return False
            return True

        def commit_cols(a: int, b: int, dh: int) -> None:
            for c in range(a, b):
                v = free[c]
                cnt[v] -= 1
                sv[v] -= v
                v -= dh
                free[c] = v
                cnt[v] += 1
                sv[v] += v

        def rec(interval_count: int) -> None:
            nonlocal stop
            # variable selection: largest guaranteed profile reduction,
            # ties to the earliest position in the fixed order
            if open_fixed:
                best_pos = open_fixed[0]
                best_red = residual[best_pos]
            else:
                best_pos = -1
                best_red = -1
            if interval_count < n and first_reduction[interval_count] > best_red:
                branch_interval(interval_count)
                return
            if best_pos >= 0:
                branch_fixed(best_pos, interval_count)
                return
            # all fixed: a complete x-assignment
            axs = [0] * n
            arot = [False] * n
            for p in range(n):
                axs[order[p]] = xs[p]
                arot[order[p]] = cur[p][0]
            self.n_solutions += 1
            if emit(XAssignment(tuple(axs), tuple(arot))) is False:
                stop = True

        def branch_interval(p: int) -> None:
            nonlocal stop, nodes, deepest, eq1_deepest
            depth = p + 1
            bh = base_h[p]
            ar = area_[p]
            for val in plans[p]:
                nodes += 1
                if nodes & mask_budget == 0:
                    budget.check()
                rot, lo, hi, ew, eh, ca, cb, comp_area = val
                if ca < cb and min(free[ca:cb]) < eh:
                    continue
                commit_cols(ca, cb, eh)
                if depth > deepest:
                    deepest = depth
                dem[bh] -= ar
                if lo == hi:
                    # single-value interval: the footprint is fully
                    # committed, fix the x immediately
                    cur[p] = val
                    status[p] = 2
                    xs[p] = lo
                    if wasted_ok():
                        rec(depth)
                    elif depth > eq1_deepest:
                        eq1_deepest = depth
                    status[p] = 0
                    cur[p] = None
                    dem[bh] += ar
                    commit_cols(ca, cb, -eh)
                    if stop:
                        return
                    continue
                res = ar - comp_area
                dem[eh] += res
                residual[p] = res
                cur[p] = val
                status[p] = 1
                open_fixed.append(p)
                if wasted_ok():
                    rec(depth)
                elif depth > eq1_deepest:
                    eq1_deepest = depth
                open_fixed.pop()
                status[p] = 0
                cur[p] = None
                dem[eh] -= res
                dem[bh] += ar
                commit_cols(ca, cb, -eh)
                if stop:
                    return

        def branch_fixed(p: int, interval_count: int) -> None:
            nonlocal stop, nodes, eq1_deepest
            rot, lo, hi, ew, eh, ca, cb, comp_area = cur[p]
            if high:
                xmax = min(hi, W - ew)
                mask = 1
                for q in range(n):
                    if status[q] == 2:
                        v = xs[q] + cur[q][3]
                        if v <= xmax:
                            mask |= 1 << v
                capmask = (1 << (xmax + 1)) - 1
                mask &= capmask
                for q in range(n):
                    if q == p or status[q] == 2:
                        continue
                    if status[q] == 1:
                        mask |= (mask << cur[q][3]) & capmask
                    elif orientable_[q]:
                        mask = (mask | (mask << w_[q]) | (mask << h_[q])) & capmask
                    else:
                        mask |= (mask << w_[q]) & capmask
                seg = mask >> lo
                candidates = []
                while seg:
                    b = seg & -seg
                    candidates.append(lo + b.bit_length() - 1)
                    seg ^= b
            else:
                candidates = range(lo, hi + 1)
            idx = open_fixed.index(p)
            res = residual[p]
            for x in candidates:
                nodes += 1
                if nodes & mask_budget == 0:
                    budget.check()
                # extend the compulsory columns [ca, cb) to [x, x + ew)
                if x < ca and min(free[x:ca]) < eh:
                    continue
                xe = x + ew
                if cb < xe and min(free[cb:xe]) < eh:
                    continue
                commit_cols(x, ca, eh)
                commit_cols(cb, xe, eh)
                dem[eh] -= res
                status[p] = 2
                xs[p] = x
                open_fixed.pop(idx)
                if wasted_ok():
                    rec(interval_count)
                elif interval_count > eq1_deepest:
                    eq1_deepest = interval_count
                open_fixed.insert(idx, p)
                status[p] = 1
                dem[eh] += res
                commit_cols(x, ca, -eh)
                commit_cols(cb, xe, -eh)
                if stop:
                    return

        try:
            if wasted_ok():
                rec(0)
        finally:
            self.nodes = nodes
            self.deepest = deepest
            self.eq1_deepest = eq1_deepest

    @property
    def eq1_at_deepest(self) -> bool:
        return self.eq1_deepest >= self.deepest


def solve_x(instance: Instance, box: Box, cfg: SolverConfig | None = None):
    """Convenience wrapper: returns (assignments, search) with every
    complete x-assignment collected in discovery order."""
    ctx = XContext(instance, cfg)
    search = XCoordSearch(ctx, box)
    out: list[XAssignment] = []
    search.search(lambda a: out.append(a) or True)
    return out, search

"""Solution verification and the brute-force oracle.

Everything here is deliberately independent of the solver: overlap is
tested pairwise with interval arithmetic (no grids, no profiles), and the
oracle enumerates raw coordinate assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Box, Instance, Solution, force_height_ge_width, total_area


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...]
    empty_cells: int
    empty_pct: Fraction

    def __str__(self) -> str:
        if self.valid:
            return f"valid, empty {float(100 * self.empty_pct):.2f}%"
        return "invalid: " + "; ".join(f"{k}{list(ids)}" for k, ids in self.violations)


def verify(instance: Instance, solution: Solution) -> VerifyReport:
    """Check placement count, bounds, rotation legality, and pairwise
    open-interior overlap."""
    violations: list[tuple[str, tuple[int, ...]]] = []
    expected = {r.id for r in instance.rects if not r.filler}
    got = [p.rect_id for p in solution.placements]
    if sorted(got) != sorted(expected):
        violations.append(("wrong_count", tuple(sorted(set(got) ^ expected))))
    box = solution.box
    spans = []
    for p in solution.placements:
        if p.rect_id not in expected:
            continue
        r = instance.rects[p.rect_id]
        if p.rotated and not r.orientable:
            violations.append(("bad_rotation", (p.rect_id,)))
            continue
        w, h = (r.height, r.width) if p.rotated else (r.width, r.height)
        if p.x < 0 or p.y < 0 or p.x + w > box.width or p.y + h > box.height:
            violations.append(("out_of_bounds", (p.rect_id,)))
            continue
        spans.append((p.rect_id, p.x, p.x + w, p.y, p.y + h))
    for i in range(len(spans)):
        ia, x0, x1, y0, y1 = spans[i]
        for j in range(i + 1, len(spans)):
            ib, u0, u1, v0, v1 = spans[j]
            if x0 < u1 and u0 < x1 and y0 < v1 and v0 < y1:
                violations.append(("overlap", (ia, ib)))
    area = total_area(instance)
    empty = box.area - area
    pct = Fraction(empty, box.area)
    return VerifyReport(not violations, tuple(violations), empty, pct)


# ------------------------------------------------------------- oracle

ORACLE_MAX_RECTS = 5
ORACLE_MAX_DIM = 8


def _oracle_contains(dims: list[tuple[int, int, bool]], W: int, H: int) -> bool:
    """Exhaustive coordinate search: every rect, every orientation, every
    integer position, with a row-bitmask grid."""
    total = sum(w * h for w, h, _ in dims)
    if total > W * H:
        return False
    rows = [0] * H
    order = sorted(range(len(dims)), key=lambda i: -dims[i][0] * dims[i][1])

    def place(i: int) -> bool:
        if i == len(order):
            return True
        w0, h0, orientable = dims[order[i]]
        opts = [(w0, h0)]
        if orientable and w0 != h0:
            opts.append((h0, w0))
        for w, h in opts:
            if w > W or h > H:
                continue
            for y in range(H - h + 1):
                for x in range(W - w + 1):
                    m = ((1 << w) - 1) << x
                    if any(rows[y + k] & m for k in range(h)):
                        continue
                    for k in range(h):
                        rows[y + k] |= m
                    if place(i + 1):
                        return True
                    for k in range(h):
                        rows[y + k] &= ~m
        return False

    return place(0)


def brute_force_optimal(instance: Instance, dim_cap: int = ORACLE_MAX_DIM):
    """Minimal area and all optimal boxes by raw enumeration.

    Only for tiny instances (at most 5 rects, dims at most ``dim_cap``);
    this is the test oracle, not a solver.
    """
    rects = [r for r in instance.rects if not r.filler]
    if len(rects) > ORACLE_MAX_RECTS:
        raise ValueError("oracle limited to 5 rects")
    if dim_cap > ORACLE_MAX_DIM:
        raise ValueError(f"oracle limited to dims <= {ORACLE_MAX_DIM}")
    if any(max(r.width, r.height) > dim_cap for r in rects):
        raise ValueError("instance exceeds the oracle dimension cap")
    dims = [(r.width, r.height, r.orientable) for r in rects]
    symm = force_height_ge_width(instance)
    wsum = sum(max(w, h) if o else w for w, h, o in dims)
    hsum = sum(max(w, h) if o else h for w, h, o in dims)
    area = total_area(instance)
    boxes = []
    for w in range(1, wsum + 1):
        for h in range(1, hsum + 1):
            if w * h < area or (symm and h < w):
                continue
            if all(
                (rw <= w and rh <= h) or (o and rh <= w and rw <= h)
                for rw, rh, o in dims
            ):
                boxes.append((w * h, w, h))
    boxes.sort()
    best = None
    optimal = []
    for a, w, h in boxes:
        if best is not None and a > best:
            break
        if _oracle_contains(dims, w, h):
            best = a
            optimal.append(Box(w, h))
    if best is None:
        raise RuntimeError("no feasible box found by the oracle")
    return best, optimal

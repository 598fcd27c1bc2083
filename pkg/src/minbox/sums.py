"""Subset-sum sets that restrict box dimensions and coordinate domains.

In any packing slid fully left and down, every coordinate and both box
dimensions are sums of subsets of the rect dimensions, so search domains
can be restricted to these sets.  Sets are built as bitsets (one Python
int, bit i == value i) and exposed as sorted integers.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache

from .model import Box, Instance


@dataclass(frozen=True)
class SumSet:
    values: tuple[int, ...]   # sorted ascending, always contains 0
    cap: int
    mask: int = 0             # bitset mirror of values

    @staticmethod
    def from_mask(mask: int, cap: int) -> "SumSet":
        mask &= (1 << (cap + 1)) - 1
        vals = []
        m = mask
        while m:
            b = m & -m
            vals.append(b.bit_length() - 1)
            m ^= b
        return SumSet(tuple(vals), cap, mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v <= self.cap and (self.mask >> v) & 1 == 1

    def __len__(self) -> int:
        return len(self.values)


def _sum_mask(dims, cap: int) -> int:
    capmask = (1 << (cap + 1)) - 1
    m = 1
    for d in dims:
        m |= m << d
        m &= capmask
    return m


def precompute(dims: list[int], cap: int) -> SumSet:
    """All subset sums of ``dims`` up to ``cap``, by bitset convolution."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    return SumSet.from_mask(_sum_mask(dims, cap), cap)


def next_sum_at_or_above(s: SumSet, v: int) -> int | None:
    """Smallest element >= v, or None when past the cap."""
    if v <= 0:
        return 0
    if v > s.cap:
        return None
    rest = s.mask >> v
    if rest == 0:
        return None
    return v + ((rest & -rest).bit_length() - 1)


def separate_axis_sets(instance: Instance, box: Box) -> tuple[SumSet, SumSet]:
    """Candidate x sums (widths) and y sums (heights) for one box.

    Oriented instances keep the axes separate.  Unoriented ones pool every
    width and height into a single dim multiset, used for both axes.
    """
    if instance.oriented:
        widths = [r.width for r in instance.rects if not r.filler]
        heights = [r.height for r in instance.rects if not r.filler]
        return (
            precompute(widths, box.width),
            precompute(heights, box.height),
        )
    dims = []
    for r in instance.rects:
        if not r.filler:
            dims.extend((r.width, r.height))
    joint = _sum_mask(dims, max(box.width, box.height))
    return (
        SumSet.from_mask(joint, box.width),
        SumSet.from_mask(joint, box.height),
    )


def dynamic_x_sums(
    fixed: list[tuple[int, int]],
    unfixed_dims: list[list[int]],
    cap: int,
) -> SumSet:
    """Per-node candidate x set.

    Seeds {0}, inserts x + width for each fixed rect (a rect can sit flush
    against another's right side), then for each unfixed rect folds in each
    of its candidate widths, truncating at ``cap``.
    """
    capmask = (1 << (cap + 1)) - 1
    m = 1
    for x, w in fixed:
        v = x + w
        if v <= cap:
            m |= 1 << v
    for dims in unfixed_dims:
        shifted = m
        for d in dims:
            shifted |= m << d
        m = shifted & capmask
    return SumSet.from_mask(m, cap)


def unique_generator(target: int, dims: list[int]) -> frozenset[int] | None:
    """The unique index subset of ``dims`` summing to ``target``, if any.

    Counts subsets by DP with the count saturated at 2; the subset is
    reconstructed only when the count is exactly 1.
    """
    if target < 0:
        raise ValueError("target must be >= 0")
    if target == 0:
        return frozenset()
    counts = _choice_counts(tuple((d,) for d in dims), target)
    if counts[len(dims)][target] == 0:
        raise ValueError("target is not a subset sum of dims")
    if counts[len(dims)][target] != 1:
        return None
    picked = []
    v = target
    for i in range(len(dims), 0, -1):
        if counts[i - 1][v] == 1:
            continue
        picked.append(i - 1)
        v -= dims[i - 1]
    return frozenset(picked)


@lru_cache(maxsize=32)
def _choice_counts(dim_choices: tuple[tuple[int, ...], ...], cap: int):
    """Per-prefix saturating subset counts where each rect contributes at
    most one of its candidate dims.  Rows are bytearrays (0, 1, or 2) so
    high-precision caps stay cheap."""
    row = bytearray(cap + 1)
    row[0] = 1
    counts = [bytes(row)]
    for dims in dim_choices:
        new = bytearray(row)
        for d in dims:
            for v in range(cap, d - 1, -1):
                prev = row[v - d]
                if prev:
                    c = new[v] + prev
                    new[v] = c if c < 2 else 2
        counts.append(bytes(new))
        row = new
    return counts


def unique_choice_generator(
    target: int, dim_choices: tuple[tuple[int, ...], ...], cap: int
) -> frozenset[int] | None:
    """Unique rect-index set generating ``target`` when each rect may
    contribute one of its candidate dims; None when 0 or >= 2 ways exist."""
    if target == 0:
        return frozenset()
    if target > cap:
        return None
    counts = _choice_counts(dim_choices, cap)
    if counts[len(dim_choices)][target] != 1:
        return None
    picked = []
    v = target
    for i in range(len(dim_choices), 0, -1):
        if counts[i - 1][v] == 1:
            continue
        for d in dim_choices[i - 1]:
            if v >= d and counts[i - 1][v - d] == 1:
                picked.append(i - 1)
                v -= d
                break
        else:  # pragma: no cover - contradiction with the count table
            raise AssertionError("reconstruction failed")
    return frozenset(picked)

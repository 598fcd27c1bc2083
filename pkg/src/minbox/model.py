"""Core domain types: rectangles, instances, candidate boxes, placements.

All geometry lives in scaled integer units.  Rational instances are
integerized by the benchmark layer (``Instance.scale`` records the
multiplier) and unscaled only when reporting results.
"""

from __future__ import annotations

from dataclasses import dataclass, field

U64_MAX = 2**64 - 1


class PrecisionError(Exception):
    """A quantity exceeded the 64-bit unsigned range."""


class TimeLimitReached(Exception):
    """The configured time budget expired before the search finished."""


@dataclass(frozen=True)
class Rect:
    """One rectangle to pack.

    ``filler`` marks space-filling rects created by the perfect-packing
    transform; they never rotate and stay out of subset-sum calculations.
    """

    id: int
    width: int
    height: int
    orientable: bool = False
    filler: bool = False

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"rect {self.id}: dimensions must be positive")
        if self.filler and self.orientable:
            raise ValueError(f"rect {self.id}: fillers are never orientable")

    @property
    def area(self) -> int:
        return self.width * self.height


@dataclass(frozen=True)
class Instance:
    """An ordered multiset of rects plus the global orientation policy.

    ``oriented`` forbids rotation for every rect; ``scale`` is the integer
    multiplier that was applied to integerize a rational instance (1 for
    native integer instances).
    """

    rects: tuple[Rect, ...]
    oriented: bool
    scale: int = 1
    label: str = ""

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be positive")
        for i, r in enumerate(self.rects):
            if r.id != i:
                raise ValueError("rect ids must be 0..len-1 in order")
        total = 0
        for r in self.rects:
            if not r.filler:
                total += r.width * r.height
            if total > U64_MAX:
                raise PrecisionError("total area exceeds 64-bit precision")

    def __len__(self) -> int:
        return len(self.rects)


def make_instance(dims, oriented, scale=1, label="") -> Instance:
    """Build an Instance from (width, height) pairs.

    Unoriented squares get ``orientable=False`` since rotating them is a
    no-op and would only widen the search.
    """
    rects = tuple(
        Rect(i, w, h, orientable=(not oriented) and w != h)
        for i, (w, h) in enumerate(dims)
    )
    return Instance(rects, oriented, scale, label)


@dataclass(frozen=True)
class Box:
    """A candidate bounding box."""

    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("box dimensions must be positive")

    @property
    def area(self) -> int:
        return self.width * self.height

    def __str__(self) -> str:
        return f"{self.width}x{self.height}"


@dataclass(frozen=True)
class Placement:
    rect_id: int
    x: int
    y: int
    rotated: bool = False


@dataclass
class SearchStats:
    """Counters accumulated over one solver run."""

    boxes_tested: int = 0
    x_solutions: int = 0
    nodes_x: int = 0
    nodes_y: int = 0
    cpu_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.boxes_tested += other.boxes_tested
        self.x_solutions += other.x_solutions
        self.nodes_x += other.nodes_x
        self.nodes_y += other.nodes_y


@dataclass(frozen=True)
class Solution:
    """A box together with one absolute placement per non-filler rect."""

    box: Box
    placements: tuple[Placement, ...]
    stats: SearchStats | None = field(default=None, compare=False)


def total_area(instance: Instance) -> int:
    """Sum of width*height over the non-filler rects, with overflow check."""
    total = 0
    for r in instance.rects:
        if r.filler:
            continue
        total += r.width * r.height
        if total > U64_MAX:
            raise PrecisionError("total area exceeds 64-bit precision")
    return total


def effective_dims(rect: Rect, rotated: bool) -> tuple[int, int]:
    """Dimensions after an optional 90-degree rotation."""
    if rotated:
        if not rect.orientable:
            raise ValueError(f"rect {rect.id} is not orientable")
        return rect.height, rect.width
    return rect.width, rect.height


def is_all_squares(instance: Instance) -> bool:
    return all(r.width == r.height for r in instance.rects)


def is_dimension_symmetric(instance: Instance) -> bool:
    """True when every w x h rect can be matched with an h x w partner.

    Checked as a perfect matching on the dims multiset; squares match
    themselves.
    """
    counts: dict[tuple[int, int], int] = {}
    for r in instance.rects:
        counts[(r.width, r.height)] = counts.get((r.width, r.height), 0) + 1
    for (w, h), c in counts.items():
        if w != h and counts.get((h, w), 0) != c:
            return False
    return True


def force_height_ge_width(instance: Instance) -> bool:
    """Whether the box symmetry H >= W may be broken for this instance.

    Holds for every unoriented instance, and for oriented ones whose dims
    multiset is symmetric (all squares are a special case).
    """
    return (not instance.oriented) or is_all_squares(instance) or is_dimension_symmetric(instance)

"""Parametric benchmark families and the plain-text instance format."""

from __future__ import annotations

import math
from enum import Enum

from .model import Instance, make_instance

MAX_CUSTOM_RECTS = 10_000


class BenchmarkFamily(str, Enum):
    consecutive_squares = "consecutive-squares"
    unoriented_consecutive = "unoriented-consecutive"
    oriented_equal_perimeter = "oriented-equal-perimeter"
    unoriented_double_perimeter = "unoriented-double-perimeter"
    high_precision = "high-precision"
    doubly_scaled = "doubly-scaled"
    unique_dimensions = "unique-dimensions"


class ParseError(ValueError):
    pass


def generate(family: BenchmarkFamily, n: int) -> Instance:
    """Build instance number ``n`` of a family.

    Rects are emitted in generation order; any solver-friendly ordering is
    the solver's concern, not the generator's.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    family = BenchmarkFamily(family)
    label = f"{family.value}-{n}"
    if family is BenchmarkFamily.consecutive_squares:
        return make_instance([(k, k) for k in range(1, n + 1)], oriented=True, label=label)
    if family is BenchmarkFamily.unoriented_consecutive:
        return make_instance([(k, k + 1) for k in range(1, n + 1)], oriented=False, label=label)
    if family is BenchmarkFamily.oriented_equal_perimeter:
        return make_instance([(k, n + 1 - k) for k in range(1, n + 1)], oriented=True, label=label)
    if family is BenchmarkFamily.unoriented_double_perimeter:
        return make_instance([(k, 2 * n - k) for k in range(1, n + 1)], oriented=False, label=label)
    if family is BenchmarkFamily.high_precision:
        # rects 1/k x 1/(k+1), integerized by the LCM of all denominators
        scale = math.lcm(*range(1, n + 2))
        dims = [(scale // k, scale // (k + 1)) for k in range(1, n + 1)]
        return make_instance(dims, oriented=False, scale=scale, label=label)
    if family is BenchmarkFamily.doubly_scaled:
        return make_instance([(2 * k, 2 * k + 2) for k in range(1, n + 1)], oriented=False, label=label)
    if family is BenchmarkFamily.unique_dimensions:
        return make_instance([(2 * k - 1, 2 * k) for k in range(1, n + 1)], oriented=False, label=label)
    raise ValueError(f"unknown family {family}")


def parse_custom(text: str, label: str = "custom") -> Instance:
    """Parse the instance format: first line 'o' or 'u', then one 'W H' per line.

    Blank lines are ignored.  Dimensions are positive integers at scale 1.
    """
    lines = text.splitlines()
    policy = None
    dims: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if policy is None:
            if line not in ("o", "u"):
                raise ParseError(f"line {lineno}: expected orientation policy 'o' or 'u'")
            policy = line
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'W H'")
        try:
            w, h = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: dimensions must be integers") from None
        if w < 1 or h < 1:
            raise ParseError(f"line {lineno}: dimensions must be positive")
        dims.append((w, h))
        if len(dims) > MAX_CUSTOM_RECTS:
            raise ParseError(f"line {lineno}: more than {MAX_CUSTOM_RECTS} rects")
    if policy is None:
        raise ParseError("empty instance: missing orientation policy line")
    if not dims:
        raise ParseError("empty instance: no rects")
    return make_instance(dims, oriented=(policy == "o"), label=label)

"""Result emission (json / svg / text) and regression checks against the
reference tables."""

from __future__ import annotations

import colorsys
import json
from dataclasses import dataclass
from fractions import Fraction

from .bbox import EnumerationResult
from .model import Box, Instance, Placement, SearchStats, Solution, total_area
from .reference import HIGH_PRECISION, TABLES

PCT_TOLERANCE = Fraction(5, 100)  # percentage points


def _fmt_box(b: Box) -> str:
    return f"{b.width}×{b.height}"


def _fmt_rational_box(b: Box, scale: int) -> str:
    return f"{Fraction(b.width, scale)} × {Fraction(b.height, scale)}"


def _sorted_boxes(boxes) -> list[Box]:
    return sorted(boxes, key=lambda b: -b.width)


def empty_fraction(instance: Instance, box: Box) -> Fraction:
    return Fraction(box.area - total_area(instance), box.area)


def emit(
    result: EnumerationResult,
    fmt: str,
    instance: Instance,
    family: str | None = None,
    n: int | None = None,
    with_timing: bool = False,
) -> bytes:
    if fmt == "json":
        return _emit_json(result, instance, family, n, with_timing)
    if fmt == "svg":
        return _emit_svg(result, instance)
    if fmt == "text":
        return _emit_text(result, instance)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_json(result, instance, family, n, with_timing) -> bytes:
    st = result.stats
    payload = {
        "instance": {
            "family": family,
            "n": n,
            "scale": instance.scale,
            "rects": [
                {"id": r.id, "w": r.width, "h": r.height, "orientable": r.orientable}
                for r in instance.rects
            ],
        },
        "optimal_area": result.optimal_area,
        "boxes": [{"w": b.width, "h": b.height} for b in result.optimal_boxes],
        "solutions": [
            {
                "box": {"w": s.box.width, "h": s.box.height},
                "placements": [
                    {"id": p.rect_id, "x": p.x, "y": p.y, "rot": p.rotated}
                    for p in s.placements
                ],
            }
            for s in result.solutions
        ],
        "stats": {
            "boxes_tested": st.boxes_tested,
            "x_solutions": st.x_solutions,
            "nodes_x": st.nodes_x,
            "nodes_y": st.nodes_y,
            # timing is opt-in so identical runs stay byte-identical
            "ms": int(st.cpu_time * 1000) if with_timing else 0,
        },
    }
    return (json.dumps(payload, separators=(",", ":")) + "\n").encode()


def parse_emitted_json(data: bytes):
    """Inverse of the json emitter: rebuild boxes and solutions."""
    doc = json.loads(data.decode())
    boxes = [Box(b["w"], b["h"]) for b in doc["boxes"]]
    solutions = [
        Solution(
            Box(s["box"]["w"], s["box"]["h"]),
            tuple(
                Placement(p["id"], p["x"], p["y"], p["rot"])
                for p in s["placements"]
            ),
        )
        for s in doc["solutions"]
    ]
    return doc, boxes, solutions


def _color(rect_id: int) -> str:
    hue = (rect_id * 47) % 360
    r, g, b = colorsys.hls_to_rgb(hue / 360.0, 0.72, 0.65)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _emit_svg(result, instance: Instance) -> bytes:
    """One drawing per solution (nested svg elements side by side); one
    rect element per placement, colored deterministically by rect id."""
    gap = 2
    sols = result.solutions or [Solution(b, ()) for b in result.optimal_boxes]
    xoff = 0
    height = max(s.box.height for s in sols) + 2
    parts = []
    for s in sols:
        w, h = s.box.width, s.box.height
        inner = [
            f'<svg x="{xoff}" y="0" width="{w}" height="{h}" viewBox="0 0 {w} {h}">'
        ]
        inner.append(
            f'<path d="M0 0H{w}V{h}H0Z" fill="none" stroke="#333" stroke-width="0.1"/>'
        )
        for p in s.placements:
            r = instance.rects[p.rect_id]
            pw, ph = (r.height, r.width) if p.rotated else (r.width, r.height)
            y = h - p.y - ph  # svg y grows downward
            inner.append(
                f'<rect x="{p.x}" y="{y}" width="{pw}" height="{ph}" '
                f'fill="{_color(p.rect_id)}" stroke="#000" stroke-width="0.05"/>'
            )
            inner.append(
                f'<text x="{p.x + pw / 2}" y="{y + ph / 2}" font-size="{max(0.5, min(pw, ph) * 0.4)}" '
                f'text-anchor="middle" dominant-baseline="middle">{p.rect_id}</text>'
            )
        inner.append("</svg>")
        parts.append("".join(inner))
        xoff += w + gap
    total_w = max(1, xoff - gap)
    doc = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {total_w} {height}">'
        + "".join(parts)
        + "</svg>\n"
    )
    return doc.encode()


def _emit_text(result, instance) -> bytes:
    boxes = ", ".join(_fmt_box(b) for b in result.optimal_boxes)
    pct = float(100 * empty_fraction(instance, result.optimal_boxes[0]))
    lines = [
        f"instance: {instance.label or 'custom'}",
        f"optimal area: {result.optimal_area}",
        f"boxes: {boxes}",
    ]
    if instance.scale > 1:
        rats = ", ".join(_fmt_rational_box(b, instance.scale) for b in result.optimal_boxes)
        lines.append(f"unscaled: {rats}")
    lines.append(f"empty: {pct:.3g}%")
    lines.append(f"boxes tested: {result.stats.boxes_tested}")
    lines.append(f"solutions: {len(result.solutions)}")
    return ("\n".join(lines) + "\n").encode()


@dataclass(frozen=True)
class ReferenceDiff:
    ok: bool
    boxes_ok: bool
    pct_ok: bool
    expected_boxes: tuple[Box, ...]
    got_boxes: tuple[Box, ...]
    expected_pct: Fraction | None
    got_pct: Fraction | None
    boxes_tested: tuple[int, int]  # (ours, reference) — informational only

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        exp = ", ".join(_fmt_box(b) for b in self.expected_boxes)
        got = ", ".join(_fmt_box(b) for b in self.got_boxes)
        return (
            f"{status}: boxes [{got}] vs [{exp}], "
            f"boxes tested {self.boxes_tested[0]} (reference {self.boxes_tested[1]})"
        )


def reference_row(family: str, n: int):
    """Reference boxes for (family, n); raises KeyError when absent."""
    if family == "high-precision":
        boxes, scale = HIGH_PRECISION[n]
        return [Box(int(w * scale), int(h * scale)) for w, h in boxes], None, scale
    boxes, pct, tested = TABLES[family][n]
    return [Box(w, h) for w, h in boxes], Fraction(pct), tested


def compare_reference(result: EnumerationResult, family: str, n: int, instance: Instance) -> ReferenceDiff:
    """Order-insensitive box-set equality plus empty-space percentage within
    0.05 points; boxes-tested counts are reported, never asserted."""
    if family == "high-precision":
        exp_boxes, _, scale = reference_row(family, n)
        if instance.scale != scale:
            raise ValueError(f"scale mismatch: instance {instance.scale}, reference {scale}")
        boxes_ok = set(exp_boxes) == set(result.optimal_boxes)
        return ReferenceDiff(
            boxes_ok,
            boxes_ok,
            True,
            tuple(_sorted_boxes(exp_boxes)),
            result.optimal_boxes,
            None,
            None,
            (result.stats.boxes_tested, -1),
        )
    exp_boxes, exp_pct, tested = reference_row(family, n)
    boxes_ok = set(exp_boxes) == set(result.optimal_boxes)
    got_pct = 100 * empty_fraction(instance, result.optimal_boxes[0])
    pct_ok = abs(got_pct - exp_pct) <= PCT_TOLERANCE
    return ReferenceDiff(
        boxes_ok and pct_ok,
        boxes_ok,
        pct_ok,
        tuple(_sorted_boxes(exp_boxes)),
        result.optimal_boxes,
        exp_pct,
        got_pct,
        (result.stats.boxes_tested, tested),
    )

"""Command-line driver.

Exit codes: 0 success / feasible, 1 contain-mode infeasible, 2 bad
configuration, 3 time limit hit with no result, 4 precision overflow.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .bbox import anytime_search, enumerate_all_optimal
from .benchmarks import BenchmarkFamily, ParseError, generate, parse_custom
from .config import Budget, SolverConfig
from .containment import test_containment
from .model import Box, PrecisionError, SearchStats, TimeLimitReached, total_area
from .report import emit
from .xcoord import XContext

OUTDIR_ENV = "MINBOX_OUTDIR"


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="minbox",
        description="Find all minimum-area boxes containing a set of rectangles.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument(
        "--family",
        choices=[f.value for f in BenchmarkFamily],
        help="benchmark family to generate",
    )
    src.add_argument("--instance", metavar="FILE", help="instance file (o|u header, then 'W H' lines)")
    p.add_argument("--n", type=int, help="family size parameter")
    p.add_argument(
        "--mode",
        choices=["all-optimal", "first-optimal", "anytime", "contain"],
        default="all-optimal",
    )
    p.add_argument("--box", metavar="WxH", help="box to test in contain mode")
    p.add_argument("--c-param", metavar="FRAC", help="interval size ratio, e.g. 0.55")
    p.add_argument("--precision", choices=["auto", "low", "high"], default="auto")
    p.add_argument("--emit", choices=["json", "svg", "text"], default="text")
    p.add_argument("--out", metavar="PATH", help=f"output path (default stdout; relative to ${OUTDIR_ENV} when set)")
    p.add_argument("--time-limit", type=float, metavar="SECONDS")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for equal-area box batches")
    p.add_argument("--timing", action="store_true", help="include wall-clock ms in json output")
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def _parse_box(text: str) -> Box:
    try:
        w, h = text.lower().split("x")
        return Box(int(w), int(h))
    except (ValueError, TypeError):
        raise ValueError(f"bad box spec {text!r}, expected WxH") from None


def _load_instance(args):
    if args.family:
        if args.n is None:
            raise ValueError("--family requires --n")
        return generate(BenchmarkFamily(args.family), args.n)
    text = Path(args.instance).read_text()
    return parse_custom(text, label=Path(args.instance).stem)


def _write_output(data: bytes, args) -> None:
    if args.out:
        path = Path(args.out)
        outdir = os.environ.get(OUTDIR_ENV)
        if outdir and not path.is_absolute():
            path = Path(outdir) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        instance = _load_instance(args)
        cfg = SolverConfig(
            c_param=Fraction(args.c_param) if args.c_param else None,
            precision=args.precision,
            time_limit=args.time_limit,
            jobs=args.jobs,
        )
        family = args.family
        n = args.n if args.family else None
        if args.mode == "contain":
            if not args.box:
                raise ValueError("contain mode requires --box WxH")
            box = _parse_box(args.box)
            if box.area < total_area(instance):
                print(f"infeasible: {box} is smaller than the total rect area", file=sys.stderr)
                return 1
            cfg.first_only = True
            ctx = XContext(instance, cfg)
            outcome = test_containment(ctx, box, cfg, Budget(cfg.time_limit))
            if args.verbose:
                print(
                    f"{box}: {'feasible' if outcome.feasible else 'infeasible'} "
                    f"({outcome.nodes_x} x-nodes, {outcome.nodes_y} y-nodes)",
                    file=sys.stderr,
                )
            return 0 if outcome.feasible else 1
        if args.mode == "anytime":
            best = None
            try:
                for sol in anytime_search(instance, cfg):
                    best = sol
                    print(
                        f"improved: {sol.box} area {sol.box.area}",
                        file=sys.stderr,
                    )
            except TimeLimitReached:
                if best is None:
                    return 3
            from .bbox import EnumerationResult

            stats = best.stats or SearchStats()
            result = EnumerationResult(
                best.box.area, (best.box,), (best,), stats, ((best.box, True),)
            )
            _write_output(emit(result, args.emit, instance, family, n, args.timing), args)
            return 0
        cfg.first_only = args.mode == "first-optimal"
        result = enumerate_all_optimal(instance, cfg)
        _write_output(emit(result, args.emit, instance, family, n, args.timing), args)
        return 0
    except TimeLimitReached:
        print("time limit reached before any result", file=sys.stderr)
        return 3
    except PrecisionError as exc:
        print(f"precision overflow: {exc}", file=sys.stderr)
        return 4
    except (ValueError, ParseError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

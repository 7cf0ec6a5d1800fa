"""Command-line front end: solve, gen, verify, bench, and render.

Points files are UTF-8 text, one "x y" pair per line; '#' starts a comment
and blank lines are ignored.  Ids are assigned by line order.  Solutions are
printed as JSON with full round-trip float precision:

    {"p": 2, "k": 0, "shape": "square", "objective": 4.0,
     "boxes": [{"xmin": ..., "ymin": ..., "xmax": ..., "ymax": ...}],
     "outliers": [ids]}

Exit codes: 0 success, 1 verify mismatch, 2 unreadable/malformed input,
3 invalid flags, 4 instance too large for the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .core import Point, ProblemSpec, validate_solution
from .generators import gen_clusters, gen_diagonal, gen_shared_coords, gen_uniform
from .oracle import OracleSizeLimitError, oracle_solve
from .preprocess import build_range_index, build_sorted
from .solvers import solve_pk

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_SIZE = 4


class ParseError(Exception):
    def __init__(self, path: str, lineno: int, detail: str):
        super().__init__(f"{path}:{lineno}: {detail}")


def read_points(path: str) -> list[Point]:
    pts: list[Point] = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(path, 0, f"cannot read file: {e}") from e
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 'x y', got {raw.strip()!r}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(path, lineno, f"bad number in {raw.strip()!r}") from None
        pts.append(Point(x, y, len(pts)))
    return pts


def write_points(pts: Sequence[Point], out) -> None:
    for p in pts:
        out.write(f"{p.x!r} {p.y!r}\n")


def solution_to_json(spec: ProblemSpec, sol) -> dict:
    return {
        "p": spec.p,
        "k": spec.k,
        "shape": spec.shape,
        "objective": sol.objective,
        "covered": sol.covered,
        "boxes": [
            {"xmin": b.xmin, "ymin": b.ymin, "xmax": b.xmax, "ymax": b.ymax}
            for b in sol.boxes
        ],
        "outliers": sorted(sol.outliers),
    }


def _open_out(path: Optional[str]):
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def _check_flags(p: int, k: int, shape: str) -> Optional[str]:
    if p not in (1, 2, 3):
        return f"invalid --p {p}: must be 1, 2 or 3"
    if k < 0:
        return f"invalid --k {k}: must be >= 0"
    if shape not in ("square", "rect"):
        return f"invalid --shape {shape!r}: must be square or rect"
    return None


def render_svg(points: Sequence[Point], boxes, outliers: set[int], out_path: str) -> None:
    """Write a deterministic SVG: dots for points (hollow when outliers),
    outlined rectangles for boxes."""
    width, height = 800.0, 600.0
    margin = 40.0
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    for b in boxes:
        xs += [b["xmin"], b["xmax"]]
        ys += [b["ymin"], b["ymax"]]
    xmin, xmax = (min(xs), max(xs)) if xs else (0.0, 1.0)
    ymin, ymax = (min(ys), max(ys)) if ys else (0.0, 1.0)
    span_x = xmax - xmin or 1.0
    span_y = ymax - ymin or 1.0
    scale = min((width - 2 * margin) / span_x, (height - 2 * margin) / span_y)

    def tx(x: float) -> float:
        return margin + (x - xmin) * scale

    def ty(y: float) -> float:
        return height - margin - (y - ymin) * scale  # y grows upward

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:g}" height="{height:g}" viewBox="0 0 {width:g} {height:g}">',
        f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="white"/>',
    ]
    for b in boxes:
        x, y = tx(b["xmin"]), ty(b["ymax"])
        w, h = (b["xmax"] - b["xmin"]) * scale, (b["ymax"] - b["ymin"]) * scale
        lines.append(
            f'<rect x="{x:.3f}" y="{y:.3f}" width="{w:.3f}" height="{h:.3f}" '
            f'fill="none" stroke="black" stroke-width="1.5"/>'
        )
    for p in points:
        if p.id in outliers:
            lines.append(
                f'<circle cx="{tx(p.x):.3f}" cy="{ty(p.y):.3f}" r="3" '
                f'fill="none" stroke="black"/>'
            )
        else:
            lines.append(
                f'<circle cx="{tx(p.x):.3f}" cy="{ty(p.y):.3f}" r="3" fill="black"/>'
            )
    lines.append("</svg>")
    Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_solve(args) -> int:
    bad = _check_flags(args.p, args.k, args.shape)
    if bad:
        print(bad, file=sys.stderr)
        return EXIT_FLAGS
    try:
        pts = read_points(args.input)
    except ParseError as e:
        print(e, file=sys.stderr)
        return EXIT_PARSE
    spec = ProblemSpec(p=args.p, k=args.k, shape=args.shape)
    S = build_sorted(pts)
    idx = build_range_index(S)
    sol = solve_pk(S, idx, spec)
    doc = solution_to_json(spec, sol)
    out = _open_out(args.out_file)
    try:
        if args.out == "json":
            json.dump(doc, out)
            out.write("\n")
        else:
            out.write(f"objective {sol.objective!r}\n")
            for b in sol.boxes:
                out.write(f"box {b.xmin!r} {b.ymin!r} {b.xmax!r} {b.ymax!r}\n")
            out.write("outliers " + " ".join(map(str, sorted(sol.outliers))) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if args.svg:
        render_svg(pts, doc["boxes"], set(sol.outliers), args.svg)
    return EXIT_OK


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "uniform":
        if len(args.args) != 1:
            print("gen uniform needs: n", file=sys.stderr)
            return EXIT_FLAGS
        pts = gen_uniform(int(args.args[0]), args.seed)
    elif kind == "clusters":
        if len(args.args) not in (2, 3):
            print("gen clusters needs: c per_cluster [spread]", file=sys.stderr)
            return EXIT_FLAGS
        spread = float(args.args[2]) if len(args.args) == 3 else 1.0
        pts = gen_clusters(int(args.args[0]), int(args.args[1]), spread, args.seed)
    elif kind == "diagonal":
        if not args.args:
            print("gen diagonal needs: v1 v2 ...", file=sys.stderr)
            return EXIT_FLAGS
        pts = gen_diagonal([float(v) for v in args.args])
    elif kind == "shared":
        if len(args.args) != 1:
            print("gen shared needs: n", file=sys.stderr)
            return EXIT_FLAGS
        pts = gen_shared_coords(int(args.args[0]), args.seed)
    else:
        print(f"unknown generator kind {kind!r}", file=sys.stderr)
        return EXIT_FLAGS
    out = _open_out(args.out_file)
    try:
        write_points(pts, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    bad = _check_flags(args.p, args.k, args.shape)
    if bad:
        print(bad, file=sys.stderr)
        return EXIT_FLAGS
    try:
        pts = read_points(args.input)
    except ParseError as e:
        print(e, file=sys.stderr)
        return EXIT_PARSE
    spec = ProblemSpec(p=args.p, k=args.k, shape=args.shape)
    S = build_sorted(pts)
    idx = build_range_index(S)
    fast = solve_pk(S, idx, spec)
    try:
        slow = oracle_solve(pts, args.p, args.k, args.shape)
    except OracleSizeLimitError as e:
        print(e, file=sys.stderr)
        return EXIT_SIZE
    for name, sol in (("fast", fast), ("oracle", slow)):
        v = validate_solution(S, spec, sol)
        if v is not None:
            print(f"{name} solution invalid: {v.kind}: {v.message}")
            return EXIT_MISMATCH
    a, b = fast.objective, slow.objective
    tol = 1e-12 * max(abs(a), abs(b), 1.0)
    if abs(a - b) > tol:
        print(f"objective mismatch: fast {a!r} vs oracle {b!r}")
        return EXIT_MISMATCH
    print(f"ok objective {a!r}")
    return EXIT_OK


def cmd_bench(args) -> int:
    bad = _check_flags(args.p, args.k, args.shape)
    if bad:
        print(bad, file=sys.stderr)
        return EXIT_FLAGS
    pts = gen_uniform(args.n, args.seed)
    spec = ProblemSpec(p=args.p, k=args.k, shape=args.shape)
    pre_times = []
    solve_times = []
    objective = None
    for _ in range(args.reps):
        t0 = time.perf_counter()
        S = build_sorted(pts)
        idx = build_range_index(S)
        t1 = time.perf_counter()
        sol = solve_pk(S, idx, spec)
        t2 = time.perf_counter()
        pre_times.append(t1 - t0)
        solve_times.append(t2 - t1)
        objective = sol.objective
    report = {
        "n": args.n,
        "p": args.p,
        "k": args.k,
        "shape": args.shape,
        "seed": args.seed,
        "reps": args.reps,
        "preprocess_s": pre_times,
        "solve_s": solve_times,
        "objective": objective,
    }
    try:
        import psutil

        report["rss_mb"] = psutil.Process().memory_info().rss / 2**20
    except ImportError:
        pass
    json.dump(report, sys.stdout)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        pts = read_points(args.input)
    except ParseError as e:
        print(e, file=sys.stderr)
        return EXIT_PARSE
    try:
        doc = json.loads(Path(args.solution).read_text(encoding="utf-8"))
        boxes = doc.get("boxes", [])
        outliers = set(doc.get("outliers", []))
        if not isinstance(boxes, list):
            raise ValueError("boxes must be a list")
    except (OSError, ValueError) as e:
        print(f"cannot read solution {args.solution}: {e}", file=sys.stderr)
        return EXIT_PARSE
    render_svg(pts, boxes, outliers, args.svg)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boxcover", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("solve", help="solve an instance from a points file")
    sp.add_argument("input")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--shape", default="square")
    sp.add_argument("--out", choices=("json", "text"), default="json")
    sp.add_argument("--out-file", default=None)
    sp.add_argument("--svg", default=None)
    sp.set_defaults(fn=cmd_solve)

    gp = sub.add_parser("gen", help="generate a points file")
    gp.add_argument("kind")
    gp.add_argument("args", nargs="*")
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--out", dest="out_file", default=None)
    gp.set_defaults(fn=cmd_gen)

    vp = sub.add_parser("verify", help="check the fast solver against the oracle")
    vp.add_argument("input")
    vp.add_argument("--p", type=int, required=True)
    vp.add_argument("--k", type=int, required=True)
    vp.add_argument("--shape", default="square")
    vp.set_defaults(fn=cmd_verify)

    bp = sub.add_parser("bench", help="time preprocess and solve phases")
    bp.add_argument("--p", type=int, required=True)
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--shape", default="square")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--seed", type=int, default=0)
    bp.add_argument("--reps", type=int, default=1)
    bp.set_defaults(fn=cmd_bench)

    rp = sub.add_parser("render", help="draw points and a solution as SVG")
    rp.add_argument("input")
    rp.add_argument("solution")
    rp.add_argument("--svg", required=True)
    rp.set_defaults(fn=cmd_render)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())

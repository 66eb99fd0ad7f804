"""Command-line interface.

Exit codes: 0 success (frozen / certified / excludable), 1 refuted or not
excludable, 2 budget or size cap exhausted, 3 certificate inconclusive or
invalid, 64 usage error, 65 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from freezeset import __version__
from freezeset.analysis import analyze
from freezeset.certifier import certify_freezing, dump_certificate, load_certificate, recheck_trace
from freezeset.errors import (
    BudgetExhaustedError,
    CapExceededError,
    DisconnectedImageError,
    ImageError,
)
from freezeset.formats import (
    GRID_CONVENTION,
    format_point,
    format_points,
    parse_image,
    parse_point_set,
    render_ascii,
    render_svg,
)
from freezeset.lattice import DigitalImage
from freezeset.oracle import (
    SearchBudget,
    enumerate_continuous_maps,
    is_excludable_bruteforce,
    minimum_freezing_sets,
    verify_freezing,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _pts(ps) -> list[list[int]]:
    return [list(p) for p in ps]


class _Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.grid = False
        self.image = self._load()
        self.points = parse_point_set(args.set) if args.set is not None else None

    def _load(self) -> DigitalImage:
        src = self.args.image
        try:
            text = sys.stdin.read() if src == "-" else Path(src).read_text(encoding="utf-8")
        except OSError as exc:
            raise ImageError(f"cannot read {src}: {exc.strerror}") from None
        self.grid = not text.strip().startswith("{")
        name = None if src == "-" else Path(src).stem
        X = parse_image(text, self.args.adjacency, name)
        if not self.grid and self.args.adjacency is not None:
            raise UsageError("--adjacency applies to grid images only")
        return X

    def require_set(self) -> tuple:
        if self.points is None:
            raise UsageError(f"{self.args.command} needs --set")
        for p in self.points:
            self.image.index(p)
        return self.points

    def budget(self) -> SearchBudget:
        if self.args.budget is not None:
            if self.args.budget < 1:
                raise UsageError("--budget must be positive")
            return SearchBudget(self.args.budget)
        return SearchBudget.from_env()

    def header(self) -> tuple[list[str], dict]:
        X = self.image
        lines = [
            f"# freezeset {self.args.command}",
            f"# image: {X.name or '-'}  n={X.dim}  u={X.u}  points={len(X)}",
        ]
        doc: dict = {
            "command": self.args.command,
            "image": {"name": X.name, "dim": X.dim, "adjacency": X.u, "size": len(X)},
        }
        if self.grid:
            lines.append(f"# {GRID_CONVENTION}")
            doc["grid_convention"] = GRID_CONVENTION
        return lines, doc


def _emit(ctx: _Context, lines: list[str], doc: dict) -> None:
    if ctx.args.json:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def cmd_analyze(ctx: _Context) -> int:
    r = analyze(ctx.image)
    lines, doc = ctx.header()
    lines += [
        f"boundary ({len(r.bd)}): {format_points(r.bd)}",
        f"degree-1 ({len(r.d1)}): {format_points(r.d1)}",
        f"articulation ({len(r.w)}): {format_points(r.w)}",
        f"extrema ({len(r.extrema)}):",
    ]
    for e in r.extrema:
        status = "justified" if e.justified else "unjustified"
        lines.append(
            f"  {format_point(e.point)} index {e.index} {e.direction} "
            f"neighbor {format_point(e.justifying_neighbor)} {status}"
        )
    lines += [
        f"justified extrema ({len(r.t)}): {format_points(r.t)}",
        f"lower bound: {r.lower_bound}",
        f"upper bound: {r.upper_bound if r.upper_bound is not None else 'none (' + r.upper_bound_reason + ')'}",
        f"upper bound from Bd(X) minus W: {r.safe_upper_bound}",
    ]
    doc.update(
        boundary=_pts(r.bd),
        degree_one=_pts(r.d1),
        articulation=_pts(r.w),
        extrema=[
            {
                "point": list(e.point),
                "index": e.index,
                "direction": e.direction,
                "justifying_neighbor": list(e.justifying_neighbor),
                "justified": e.justified,
            }
            for e in r.extrema
        ],
        justified_extrema=_pts(r.t),
        lower_bound=r.lower_bound,
        upper_bound=r.upper_bound,
        upper_bound_reason=r.upper_bound_reason,
        safe_upper_bound=r.safe_upper_bound,
    )
    _emit(ctx, lines, doc)
    return EXIT_OK


def cmd_verify(ctx: _Context) -> int:
    A = ctx.require_set()
    v = verify_freezing(
        ctx.image, A, ctx.budget(),
        prune_pulling=not ctx.args.no_pulling, threads=ctx.args.threads,
    )
    lines, doc = ctx.header()
    lines += [f"set ({len(A)}): {format_points(A)}", f"verdict: {v.outcome}", f"nodes: {v.nodes_explored}"]
    doc.update(set=_pts(A), verdict=v.outcome, nodes=v.nodes_explored, witness=None)
    if v.witness is not None:
        lines.append("witness (moved points):")
        lines += [f"  {format_point(p)} -> {format_point(v.witness(p))}" for p in v.witness.moved()]
        doc["witness"] = [[list(p), list(q)] for p, q in v.witness.items()]
    _emit(ctx, lines, doc)
    return {"frozen": EXIT_OK, "refuted": EXIT_NEGATIVE}.get(v.outcome, EXIT_BUDGET)


def cmd_certify(ctx: _Context) -> int:
    lines, doc = ctx.header()
    if ctx.args.check:
        try:
            cert = load_certificate(Path(ctx.args.check).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ImageError(f"cannot read {ctx.args.check}: {exc.strerror}") from None
        valid = recheck_trace(ctx.image, cert.seed, cert.trace, cert.closure)
        complete = len(cert.closure) == len(ctx.image)
        ok = valid and complete and cert.certified
        lines += [
            f"certificate: {ctx.args.check}",
            f"replay: {'valid' if valid else 'invalid'}",
            f"outcome: {'certified' if ok else 'inconclusive'}",
        ]
        doc.update(replay_valid=valid, outcome="certified" if ok else "inconclusive")
        _emit(ctx, lines, doc)
        return EXIT_OK if ok else EXIT_INCONCLUSIVE
    A = ctx.require_set()
    cert = certify_freezing(ctx.image, A)
    lines += [f"set ({len(A)}): {format_points(A)}", f"outcome: {cert.outcome}", f"steps: {len(cert.trace)}"]
    for s in cert.trace.steps:
        lines.append(f"  {s.rule}: {format_points(s.premises)} => {format_points(s.forced)}")
    lines.append(f"closure ({len(cert.closure)}): {format_points(cert.closure)}")
    doc.update(
        set=_pts(A),
        outcome=cert.outcome,
        closure=_pts(cert.closure),
        trace=[{"rule": s.rule, "premises": _pts(s.premises), "forced": _pts(s.forced)} for s in cert.trace.steps],
    )
    if ctx.args.trace_out:
        Path(ctx.args.trace_out).write_text(dump_certificate(cert), encoding="utf-8")
    _emit(ctx, lines, doc)
    return EXIT_OK if cert.certified else EXIT_INCONCLUSIVE


def cmd_minimize(ctx: _Context) -> int:
    pruning = not ctx.args.no_theorem_pruning
    found = minimum_freezing_sets(
        ctx.image,
        restrict_to_boundary=ctx.args.boundary_only,
        theorem_pruning=pruning,
        budget=ctx.budget(),
        pool_cap=ctx.args.pool_cap,
    )
    lines, doc = ctx.header()
    size = len(found[0]) if found else None
    lines += [
        f"boundary only: {'yes' if ctx.args.boundary_only else 'no'}",
        f"theorem pruning: {'yes' if pruning else 'no'}",
        f"minimum size: {size if size is not None else 'none found'}",
        f"sets ({len(found)}):",
    ]
    lines += [f"  {format_points(s)}" for s in found]
    doc.update(
        boundary_only=ctx.args.boundary_only,
        theorem_pruning=pruning,
        minimum_size=size,
        sets=[_pts(s) for s in found],
    )
    _emit(ctx, lines, doc)
    return EXIT_OK


def cmd_excludable(ctx: _Context) -> int:
    W = ctx.require_set()
    ok = is_excludable_bruteforce(ctx.image, W, ctx.budget())
    lines, doc = ctx.header()
    lines += [f"set ({len(W)}): {format_points(W)}", f"excludable: {'yes' if ok else 'no'}"]
    doc.update(set=_pts(W), excludable=ok)
    _emit(ctx, lines, doc)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_enum_maps(ctx: _Context) -> int:
    fix = ctx.points or ()
    for p in fix:
        ctx.image.index(p)
    limit = ctx.args.limit
    maps = list(enumerate_continuous_maps(ctx.image, fix, None if limit == 0 else limit + 1))
    truncated = limit != 0 and len(maps) > limit
    if truncated:
        maps = maps[:limit]
    sample = maps[: ctx.args.sample]
    lines, doc = ctx.header()
    lines += [
        f"fixed ({len(fix)}): {format_points(fix)}",
        f"continuous maps: {len(maps)}{' (truncated)' if truncated else ''}",
    ]
    for k, f in enumerate(sample):
        moved = ", ".join(f"{format_point(p)}->{format_point(f(p))}" for p in f.moved()) or "identity"
        lines.append(f"  #{k}: {moved}")
    doc.update(
        fixed=_pts(fix),
        count=len(maps),
        truncated=truncated,
        sample=[[[list(p), list(q)] for p, q in f.items()] for f in sample],
    )
    _emit(ctx, lines, doc)
    return EXIT_OK


def cmd_render(ctx: _Context) -> int:
    highlight = ctx.points or ()
    text = render_svg(ctx.image, highlight) if ctx.args.svg else render_ascii(ctx.image, highlight)
    if ctx.args.output:
        Path(ctx.args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "minimize": cmd_minimize,
    "excludable": cmd_excludable,
    "enum-maps": cmd_enum_maps,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--image", required=True, help="JSON image document or ASCII grid ('-' for stdin)")
    common.add_argument("--adjacency", type=int, help="c_u parameter for grid images (default 1)")
    common.add_argument("--set", help='point set, e.g. "(0,1);(3,0)"')
    common.add_argument("--budget", type=int, help="search node budget (env FREEZE_BUDGET, default 10000000)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for the search (default 1)")
    common.add_argument("--json", action="store_true", help="structured output")

    parser = _Parser(prog="freezeset", description="Freezing sets of finite digital images.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("analyze", parents=[common], help="structural point classes and bounds")
    p = sub.add_parser("verify", parents=[common], help="exact freezing decision")
    p.add_argument("--no-pulling", action="store_true", help="disable pulling-lemma pruning")
    p = sub.add_parser("certify", parents=[common], help="propagation certificate")
    p.add_argument("--trace-out", help="write the certificate in line form to this file")
    p.add_argument("--check", help="replay a certificate file instead of building one")
    p = sub.add_parser("minimize", parents=[common], help="minimum freezing sets")
    p.add_argument("--boundary-only", action="store_true", help="draw candidates from Bd(X) only")
    p.add_argument("--no-theorem-pruning", action="store_true", help="no forced inclusions or exclusions")
    p.add_argument("--pool-cap", type=int, default=20, help="largest candidate pool accepted (default 20)")
    sub.add_parser("excludable", parents=[common], help="brute-force excludability of --set")
    p = sub.add_parser("enum-maps", parents=[common], help="continuous self-maps fixing --set")
    p.add_argument("--limit", type=int, default=100000, help="stop after this many maps (0: no limit)")
    p.add_argument("--sample", type=int, default=3, help="number of maps to print")
    p = sub.add_parser("render", parents=[common], help="draw a 2D image, highlighting --set")
    p.add_argument("--svg", action="store_true", help="SVG instead of ASCII")
    p.add_argument("--output", help="write to this file instead of stdout")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        ctx = _Context(args)
        return COMMANDS[args.command](ctx)
    except UsageError as exc:
        print(f"freezeset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageError, DisconnectedImageError) as exc:
        print(f"freezeset: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (BudgetExhaustedError, CapExceededError) as exc:
        print(f"freezeset: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

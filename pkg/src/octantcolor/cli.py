"""Batch front door.

Subcommands: gen, color, verify, cover, layers, reduce, duel. All output
formats are plain text with '#' comments and exact numbers ("p/q" for
rationals, "inf" for infinite apex coordinates), so fixtures diff cleanly
and runs are byte-reproducible for a fixed seed.

Exit codes: 0 success (verified / violation found, per subcommand), 1
usage or I/O trouble, 2 contract failure (validation failed, threshold
above --expect, precondition violated).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adversary import RandomColorer, run_duel, sample_algorithms
from .coloring import BaseColorerConfig, color_point_set
from .cover import build_octant_cover, validate_cover
from .errors import OctantColorError
from .generators import KINDS, generate_points
from .geometry import (
    PointSet,
    compute_layers,
    format_coord,
    format_ext_coord,
    parse_coord,
)
from .reductions import dualize_octants, family_to_octants
from .validation import FAMILY_KINDS, check_family
from .verify import colorfulness_report

__all__ = ["main", "coloring_to_text", "parse_coloring_text"]


def coloring_to_text(k: int, guaranteed, verified, colors) -> str:
    """Stable coloring file format: header then one 'index color' per line."""
    header = f"k={k} guaranteed={guaranteed} verified={verified if verified is not None else 'unverified'}"
    lines = [header] + [f"{i} {c}" for i, c in enumerate(colors)]
    return "\n".join(lines) + "\n"


def parse_coloring_text(text: str):
    """Returns (k, colors tuple) from a coloring file."""
    k = None
    assignments = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("k="):
            fields = dict(tok.split("=", 1) for tok in line.split())
            k = int(fields["k"])
            continue
        idx_tok, color_tok = line.split()
        assignments[int(idx_tok)] = int(color_tok)
    if k is None:
        raise ValueError("coloring file is missing its 'k=...' header line")
    n = len(assignments)
    if sorted(assignments) != list(range(n)):
        raise ValueError("coloring file must assign indices 0..n-1 exactly once")
    return k, tuple(assignments[i] for i in range(n))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write(path, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_points(path) -> PointSet:
    return PointSet.from_text(Path(path).read_text())


def _cmd_gen(args) -> int:
    ps = generate_points(args.kind, args.n, args.seed)
    _write(args.out, ps.to_text())
    return 0


def _cmd_color(args) -> int:
    ps = _read_points(args.input)
    cfg = BaseColorerConfig(
        strategy=args.strategy,
        target_c=args.target_c,
        max_restarts=args.max_restarts,
        seed=args.seed,
    )
    result = color_point_set(ps, args.k, cfg, verify=args.verify)
    _write(
        args.out,
        coloring_to_text(
            args.k,
            result.guaranteed_threshold,
            result.verified_threshold,
            result.coloring.colors,
        ),
    )
    return 0


def _cmd_verify(args) -> int:
    ps = _read_points(args.points)
    k, colors = parse_coloring_text(Path(args.coloring).read_text())
    report = colorfulness_report(ps, colors, k=k)
    lines = [
        f"k={report.k}",
        f"n={len(ps)}",
        f"minimal_colorful_threshold={report.minimal_colorful_threshold}",
        f"octants_examined={report.octants_examined}",
    ]
    if report.witness is not None:
        apex = " ".join(format_coord(c) for c in report.witness.apex)
        lines += [
            f"witness_apex={apex}",
            f"witness_size={report.witness.size}",
            f"witness_missing_color={report.witness.missing_color}",
        ]
    _write(args.out, "\n".join(lines) + "\n")
    if args.expect is not None and report.minimal_colorful_threshold > args.expect:
        return 2
    return 0


def _cmd_cover(args) -> int:
    ps = _read_points(args.input)
    cover = build_octant_cover(ps)
    report = validate_cover(cover, probes=args.probes, seed=args.seed)
    lines = [
        " ".join(format_ext_coord(c) for c in octant.apex) for octant in cover.octants
    ]
    _write(args.out, "\n".join(lines) + "\n")
    summary = (
        f"octants={report.n_octants} cardinality={'pass' if report.cardinality_ok else 'fail'}"
        f" interior={'pass' if report.interior_ok else 'fail'}"
        f" coverage={'pass' if report.coverage_ok else 'fail'}"
        f" cells={report.cells_checked} probes={report.probes_checked}"
    )
    print(summary, file=sys.stderr)
    return 0 if report.passed else 2


def _cmd_layers(args) -> int:
    ps = _read_points(args.input)
    layers = compute_layers(ps)
    _write(args.out, "\n".join(" ".join(str(i) for i in layer) for layer in layers) + "\n")
    return 0


def _cmd_reduce(args) -> int:
    rows = []
    for lineno, raw in enumerate(Path(args.input).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise ValueError(f"line {lineno}: expected 3 values, got {len(tokens)}")
        rows.append(tuple(parse_coord(t) for t in tokens))
    shapes = check_family(rows, args.family)
    points = dualize_octants(family_to_octants(shapes))
    _write(args.out, points.to_text())
    return 0


def _cmd_duel(args) -> int:
    cls = sample_algorithms()[args.algorithm]
    algorithm = cls(args.seed) if cls is RandomColorer else cls()
    result = run_duel(args.k, args.d, algorithm, early_exit=not args.full_playouts)
    _write(args.out, "\n".join(result.transcript.lines()) + "\n")
    return 0 if result.is_violation else 2


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="octantcolor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a points file")
    p.add_argument("--kind", choices=list(KINDS) + ["Pn-tight"], default="random3d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("color", help="k-color a points file")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--target-c", type=int, default=12, dest="target_c")
    p.add_argument("--strategy", choices=["exact", "local"], default="local")
    p.add_argument("--max-restarts", type=int, default=40, dest="max_restarts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("verify", help="exact colorfulness report for a coloring")
    p.add_argument("--points", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--expect", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("cover", help="build and validate an octant cover")
    p.add_argument("--input", required=True)
    p.add_argument("--probes", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("layers", help="staircase layers of a points file")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_layers)

    p = sub.add_parser("reduce", help="map a shape family to dual points")
    p.add_argument("--from", dest="family", choices=list(FAMILY_KINDS), required=True)
    p.add_argument("--to", choices=["points"], default="points")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("duel", help="run the adversary against an algorithm")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--algorithm", choices=sorted(sample_algorithms()), default="eager")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--full-playouts", action="store_true", dest="full_playouts")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_duel)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.func(args)
    except OctantColorError as exc:
        print(f"octantcolor: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"octantcolor: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

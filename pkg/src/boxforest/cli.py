"""Command line front end.

Subcommands: ``gen`` writes instance files, ``decompose`` tables the
per-pattern digraphs and their structural checks, ``color`` runs the full
dichotomy and emits a certificate, ``verify`` re-checks a certificate
against an instance, and ``oracle`` exposes the exact solvers.

Exit codes: 0 success (for ``color``: a coloring), 2 bad input, 3 the
dichotomy produced an induced tree, 4 an exact oracle refused an instance
above its size limit, 5 a verification failed.

The oracle size limits default from the environment variables
BOXFOREST_OMEGA_LIMIT, BOXFOREST_CHI_LIMIT and BOXFOREST_VERIFY_LIMIT;
explicit flags win over the environment.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .generators import (
    burling_like,
    grid_disjoint_boxes,
    nested_chain_boxes,
    random_boxes,
)
from .geometry import boxes_to_text, load_boxes, normalize
from .graphs import intersection_graph
from .oracles import DEFAULT_LIMITS, OracleLimitError, OracleLimits, alpha, chi, omega
from .patterns import decompose as decompose_boxes
from .patterns import verify_basic
from .pipeline import (
    ProperColoring,
    certificate_to_json,
    chi_bound,
    color_or_find_forest,
    extract_independent,
    parse_certificate,
    verify_certificate,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_TREE = 3
EXIT_REFUSED = 4
EXIT_FAILED = 5


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _env_limit(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def _resolve_limits(args: argparse.Namespace) -> OracleLimits:
    def pick(flag: int | None, env_name: str, fallback: int) -> int:
        if flag is not None:
            return flag
        env = _env_limit(env_name)
        return env if env is not None else fallback

    return OracleLimits(
        omega=pick(args.omega_limit, "BOXFOREST_OMEGA_LIMIT", DEFAULT_LIMITS.omega),
        chi=pick(args.chi_limit, "BOXFOREST_CHI_LIMIT", DEFAULT_LIMITS.chi),
        verify=pick(args.verify_limit, "BOXFOREST_VERIFY_LIMIT", DEFAULT_LIMITS.verify),
    )


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_normalized(path: str):
    return normalize(load_boxes(path))


def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == "random":
        boxes = random_boxes(args.n, args.d, args.seed)
    elif args.kind == "nested":
        boxes = nested_chain_boxes(args.n, args.d)
    elif args.kind == "grid":
        boxes = grid_disjoint_boxes(args.n, args.d)
    else:
        boxes = burling_like(args.level, args.limit)
    _write_text(boxes_to_text(boxes), args.out)
    return EXIT_OK


def _flag(value: bool | None) -> str:
    if value is None:
        return "skipped"
    return "yes" if value else "NO"


def cmd_decompose(args: argparse.Namespace) -> int:
    boxes = _load_normalized(args.input)
    limits = _resolve_limits(args)
    g = intersection_graph(boxes)
    family = decompose_boxes(boxes)
    width = max(len("pattern"), max(len(str(pd.pattern)) for pd in family))
    print(f"{'pattern':<{width}}  {'arcs':>6}  acyclic  modest  divergent")
    failed = False
    skipped = False
    for pd in family:
        report = verify_basic(pd, g, limits)
        skipped = skipped or report.modest is None
        failed = failed or report.acyclic is False
        failed = failed or report.modest is False or report.divergent is False
        line = (
            f"{str(pd.pattern):<{width}}  {len(pd.digraph.arcs):>6}  "
            f"{_flag(report.acyclic):<7}  {_flag(report.modest):<6}  "
            f"{_flag(report.divergent)}"
        )
        if report.witness:
            line += f"  [{report.witness}]"
        print(line)
    nonempty = sum(1 for pd in family if pd.digraph.arcs)
    print(f"{len(family)} patterns, {nonempty} with arcs, n={len(boxes)}")
    if skipped:
        print(
            f"note: structural checks skipped, n={len(boxes)} exceeds the "
            f"verification limit {limits.verify}"
        )
    return EXIT_FAILED if failed else EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    boxes = _load_normalized(args.input)
    limits = _resolve_limits(args)
    d = boxes[0].dim
    w = args.omega_bound
    if w is None and args.r >= 1 and d >= 2:
        # resolve omega here so the summary can report it; the pipeline
        # treats the exact value like any caller-supplied upper bound
        w = omega(intersection_graph(boxes), limits)
    cert = color_or_find_forest(
        boxes,
        args.r,
        args.k,
        limits=limits,
        omega_bound=w,
        threads=args.threads,
    )
    _write_text(certificate_to_json(cert), args.out)
    if isinstance(cert, ProperColoring):
        if w is None:
            w = max(cert.coloring.palette_size, 1)  # d = 1 sweep is optimal
        rep = chi_bound(d, args.r, args.k, w)
        print(
            f"coloring: {cert.coloring.palette_size} colors within bound "
            f"{rep.derived_bound} (stated form {rep.stated_bound}), omega {w}",
            file=sys.stderr,
        )
        return EXIT_OK
    summary = (
        f"induced tree: depth {cert.r}, branching {cert.k}, "
        f"{len(cert.mapping)} boxes"
    )
    if w is not None:
        rep = chi_bound(d, args.r, args.k, w)
        summary += (
            f"; bound {rep.derived_bound} (stated form {rep.stated_bound}), "
            f"omega {w}"
        )
    print(summary, file=sys.stderr)
    return EXIT_TREE


def cmd_verify(args: argparse.Namespace) -> int:
    boxes = _load_normalized(args.input)
    with open(args.certificate, "r", encoding="utf-8") as fh:
        payload = parse_certificate(fh.read())
    ok, message = verify_certificate(boxes, payload)
    print(message)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle(args: argparse.Namespace) -> int:
    boxes = _load_normalized(args.input)
    limits = _resolve_limits(args)
    g = intersection_graph(boxes)
    if args.stat in ("chi", "omega", "alpha"):
        fn = {"chi": chi, "omega": omega, "alpha": alpha}[args.stat]
        print(f"{args.stat} = {fn(g, limits)}")
        return EXIT_OK
    n, d = len(boxes), boxes[0].dim
    w = omega(g, limits)
    a = alpha(g, limits)
    bound_ok = a**d * w >= n
    need = 1
    while need**d * w < n:
        need += 1
    found = extract_independent(boxes)
    extract_ok = len(found.ids) >= need
    print(f"n = {n}, d = {d}, omega = {w}, alpha = {a}")
    print(f"containment bound alpha^d * omega >= n: {'PASS' if bound_ok else 'FAIL'}")
    print(
        f"extraction found {len(found.ids)} disjoint boxes, needs {need}: "
        f"{'PASS' if extract_ok else 'FAIL'}"
    )
    return EXIT_OK if bound_ok and extract_ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxforest",
        description="Color box intersection graphs or find induced trees in them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    limit_flags = argparse.ArgumentParser(add_help=False)
    limit_flags.add_argument(
        "--omega-limit", type=_positive, default=None,
        help="max n for the exact clique/independence oracles",
    )
    limit_flags.add_argument(
        "--chi-limit", type=_positive, default=None,
        help="max n for the exact chromatic number oracle",
    )
    limit_flags.add_argument(
        "--verify-limit", type=_positive, default=None,
        help="max n for the per-pattern structural checks",
    )

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument(
        "--kind", required=True, choices=("random", "nested", "grid", "burling")
    )
    gen.add_argument("--n", type=_positive, default=10, help="box count")
    gen.add_argument("--d", type=_positive, default=2, help="dimension")
    gen.add_argument("--seed", type=int, default=0, help="random seed")
    gen.add_argument(
        "--level", type=_positive, default=3, help="recursion depth (burling)"
    )
    gen.add_argument(
        "--limit", type=_positive, default=2000,
        help="size guard for the burling recursion",
    )
    gen.add_argument("--out", default=None, help="output path (default stdout)")
    gen.set_defaults(func=cmd_gen)

    dec = sub.add_parser(
        "decompose", parents=[limit_flags],
        help="table the per-pattern digraphs and structural checks",
    )
    dec.add_argument("input", help="box file")
    dec.set_defaults(func=cmd_decompose)

    col = sub.add_parser(
        "color", parents=[limit_flags],
        help="run the dichotomy: proper coloring or induced tree",
    )
    col.add_argument("input", help="box file")
    col.add_argument("--r", type=_nonnegative, required=True, help="tree depth")
    col.add_argument("--k", type=_positive, required=True, help="tree branching")
    col.add_argument(
        "--threads", type=_positive, default=1,
        help="worker threads for the per-pattern stage",
    )
    col.add_argument(
        "--omega-bound", type=_positive, default=None,
        help="caller-guaranteed clique number upper bound (skips the oracle)",
    )
    col.add_argument("--out", default=None, help="certificate path (default stdout)")
    col.set_defaults(func=cmd_color)

    ver = sub.add_parser("verify", help="re-check a certificate against an instance")
    ver.add_argument("input", help="box file")
    ver.add_argument("--certificate", required=True, help="certificate JSON path")
    ver.set_defaults(func=cmd_verify)

    orc = sub.add_parser(
        "oracle", parents=[limit_flags], help="run an exact solver on an instance"
    )
    orc.add_argument("input", help="box file")
    orc.add_argument(
        "--stat", required=True, choices=("chi", "omega", "alpha", "ehcheck")
    )
    orc.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())

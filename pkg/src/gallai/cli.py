"""Command-line front end: ``gallai <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coloring import ColoredKn, find_rainbow_triangle, load_coloring
from .constructions import build_extremal, certificates_to_json, certify_no_mono_cycle
from .cycles import DEFAULT_BUDGET, find_mono_cycle
from .decomposition import decompose_full, gallai_partition, refine_connected
from .errors import BudgetExceeded, CycleFound, GallaiError
from .suite import DEFAULT_CONFIG, ensure_writable, parse_config, run_claim, summary_dict, write_reports
from .verify import BUDGET, CLAIMS, FAIL, worst_verdict

EXIT_CODES = {"pass": 0, FAIL: 1, BUDGET: 2}


def _read(path: str) -> ColoredKn:
    if path == "-":
        return load_coloring(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return load_coloring(fh)


def cmd_check(args) -> int:
    c = _read(args.file)
    w = find_rainbow_triangle(c)
    if w is None:
        print(f"Gallai coloring: N={c.order}, k={c.color_count}, colors used {sorted(c.colors_used())}")
        return 0
    print(f"rainbow triangle {' '.join(map(str, w.vertices))} colors {' '.join(map(str, w.colors))}")
    return 1


def cmd_decompose(args) -> int:
    c = _read(args.file)
    if args.full:
        print(decompose_full(c).to_text())
        return 0
    part = gallai_partition(c)
    if args.connected:
        part = refine_connected(c, part)
    print(f"# Gallai partition p={part.p}, between colors {sorted(part.between_colors())}")
    for i, block in enumerate(part.blocks):
        print(f"V{i}: {' '.join(map(str, block))}")
    for (i, j), col in sorted(part.between.items()):
        print(f"R {i} {j} {col}")
    return 0


def cmd_find_cycle(args) -> int:
    c = _read(args.file)
    try:
        w = find_mono_cycle(c, args.length, args.color, budget=args.budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    if w is None:
        print(f"no monochromatic C_{args.length}")
        return 1
    print(f"color {w.color}: {' '.join(map(str, w.vertices))}")
    return 0


def cmd_construct(args) -> int:
    c = build_extremal(args.family, args.n, args.k)
    text = c.to_text()
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.output}: N={c.order}, k={c.color_count}", file=sys.stderr)
    return 0


def cmd_certify(args) -> int:
    c = _read(args.file)
    try:
        certs = certify_no_mono_cycle(c, args.length, budget=args.budget)
    except CycleFound as exc:
        print(f"cycle found in color {exc.witness.color}: {' '.join(map(str, exc.witness.vertices))}")
        return 1
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    doc = json.dumps(certificates_to_json(certs, args.length), indent=2, sort_keys=True) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(doc)
    else:
        Path(args.out).write_text(doc, encoding="utf-8")
        for i, cert in sorted(certs.items()):
            print(f"color {i}: {cert.variant}")
    return 0


def cmd_verify(args) -> int:
    sec = dict(DEFAULT_CONFIG.get(args.claim, {}))
    for key in ("n", "k", "N", "samples", "slack"):
        value = getattr(args, key)
        if value is not None:
            sec[key] = value
    cfg = dict(DEFAULT_CONFIG, seed=args.seed, workers=args.workers, budget=args.budget)
    cfg[args.claim] = sec
    if args.out:
        ensure_writable(Path(args.out))
    reports = run_claim(args.claim, cfg)
    for rep in reports:
        print(json.dumps(rep.to_json(), sort_keys=True))
    if args.out:
        write_reports(reports, Path(args.out), plot=args.plot)
    return EXIT_CODES[worst_verdict(reports)]


def cmd_suite(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    if args.out:
        cfg["out"] = args.out
    if args.plot:
        cfg["plot"] = True
    from .suite import run_suite

    reports = run_suite(cfg)
    print(json.dumps(summary_dict(reports), indent=2, sort_keys=True))
    return EXIT_CODES[worst_verdict(reports)]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gallai", description="Gallai colorings: decomposition, cycles, certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test a coloring file for rainbow triangles")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="print the Gallai partition or full Gallai tree")
    p.add_argument("file")
    p.add_argument("--full", action="store_true", help="print the recursive Gallai tree")
    p.add_argument("--connected", action="store_true", help="coarsen so each between-color is connected")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("find-cycle", help="exact monochromatic cycle search (exit 0 found, 1 absent, 2 budget)")
    p.add_argument("file")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--color", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_find_cycle)

    p = sub.add_parser("construct", help="write an extremal lower-bound coloring")
    p.add_argument("family", choices=("odd", "even"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="absence certificates for a monochromatic cycle length")
    p.add_argument("file")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="run one claim check")
    p.add_argument("claim", choices=CLAIMS)
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--k", type=int, nargs="+")
    p.add_argument("--N", type=int, nargs="+", help="complete-graph orders for gr-exact-small")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--slack", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="directory for JSON reports (and figures with --plot)")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run a configured set of claim checks")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GallaiError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

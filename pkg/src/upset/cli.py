"""Command-line entry point.  Each subcommand is a thin adapter over the library."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from typing import List, Optional

import mpmath

from . import __version__
from .embedder import grid_embed, search_embedding, verify_embedding
from .errors import FormatError, SearchBudgetExceeded, UpsetError
from .formats import (
    format_edges,
    placement_json,
    read_edges,
    read_placement,
    read_points,
    write_points,
)
from .graphs import build_gadget
from .montecarlo import Mode, TrialConfig, run_trials, theorem1_experiment
from .permutations import Permutation, lds, lis, perm_of, stirling_chain, theorem_threshold
from .witness import certify_nonuniversal, monotone_witness

EXIT_OK, EXIT_PRECONDITION, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _manifest(args, started: str) -> dict:
    config = {k: v for k, v in vars(args).items() if k not in ("func",)}
    return {
        "subcommand": args.command,
        "config": config,
        "version": __version__,
        "master_seed": getattr(args, "seed", None),
        "started": started,
        "finished": _now(),
    }


def _workers(args) -> int:
    env = os.environ.get("UPSET_WORKERS")
    return int(env) if env else args.workers


def _csv_row(row: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
    w.writeheader()
    w.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit_code) or a raw string for stdout

def cmd_gadget(args):
    g = build_gadget(args.n)
    text = format_edges(g)
    if args.output is None:
        return text, EXIT_OK
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return {"n": g.n, "m": g.m, "k": g.k, "path": args.output}, EXIT_OK


def cmd_grid_embed(args):
    g = read_edges(args.graph)
    e = grid_embed(g)
    write_points(e.placement, args.output)
    rows = placement_json(e)
    if args.placement:
        with open(args.placement, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"placement": rows}, fh)
            fh.write("\n")
    return {"n": g.n, "verified": verify_embedding(e), "points": args.output, "placement": rows}, EXIT_OK


def cmd_embed_check(args):
    g = read_edges(args.graph)
    pts = read_points(args.points)
    try:
        out = search_embedding(g, pts, args.budget)
    except SearchBudgetExceeded as exc:
        return {"result": "unknown", "placement": [], "nodes_expanded": exc.nodes_expanded}, EXIT_UNKNOWN
    if out.found:
        return {"result": "yes", "placement": placement_json(out.embedding), "nodes_expanded": out.nodes_expanded}, EXIT_OK
    return {"result": "no", "placement": [], "nodes_expanded": out.nodes_expanded}, EXIT_OK


def cmd_witness(args):
    g = read_edges(args.graph)
    pts = set(read_points(args.points))
    e = read_placement(args.placement, g)
    if not set(e.placement) <= pts:
        raise FormatError("placement uses points outside the point set")
    w = monotone_witness(e)
    return {
        "direction": w.direction.value,
        "size": len(w),
        "points": [[p.x, p.y] for p in w.points],
        "provenance": [{"cycle": h.cycle, "role": h.role.value} for h in w.provenance],
    }, EXIT_OK


def cmd_certify(args):
    pts = read_points(args.points)
    cert = certify_nonuniversal(pts, args.n)
    if cert is not None:
        return {"certified": True, "lis": cert.lis, "lds": cert.lds, "ell": cert.ell, "m": cert.m}, EXIT_OK
    p = perm_of(pts)
    return {"certified": False, "lis": lis(p), "lds": lds(p), "ell": args.n // 12, "m": len(p)}, EXIT_OK


def cmd_lis(args):
    try:
        p = Permutation(int(t) for t in args.perm.split(","))
    except ValueError:
        raise UpsetError(f"cannot parse permutation {args.perm!r}") from None
    return {"perm": list(p), "lis": lis(p), "lds": lds(p)}, EXIT_OK


def cmd_bound(args):
    th = theorem_threshold(args.n)
    return {
        "m_max": th.m_max,
        "tail": float(th.tail),
        "boundary_flag": th.boundary_flag,
        "candidates": list(th.candidates),
    }, EXIT_OK


def cmd_chain(args):
    r = stirling_chain(args.m, args.ell, args.n)
    return {
        "m": r.m,
        "ell": r.ell,
        "n": r.n,
        "precondition_met": r.precondition_met,
        "monotone": r.monotone,
        "steps": [
            {"name": s.name, "value": float(s.value), "exact": mpmath.nstr(s.value, 30), "applies": s.applies}
            for s in r.steps
        ],
    }, EXIT_OK


def _flat(report: dict) -> dict:
    row = {}
    for key, val in report.items():
        if isinstance(val, dict):
            for sub, v in val.items():
                row[f"{key}.{sub}"] = v
        elif isinstance(val, list):
            row[f"{key}.lo"], row[f"{key}.hi"] = val
        else:
            row[key] = val
    return row


def cmd_mc(args):
    cfg = TrialConfig(args.m, args.ell, args.trials, args.seed, Mode(args.mode))
    rep = run_trials(cfg, workers=_workers(args))
    out = rep.to_json()
    out["bounds"]["tail"] = None
    out["vacuous"] = False
    out["certificate_rate"] = None
    if args.csv:
        return _csv_row(_flat(out)), EXIT_OK
    return out, EXIT_OK


def cmd_thm1(args):
    rep = theorem1_experiment(args.n, args.trials, args.seed, m=args.m, ell=args.ell, workers=_workers(args))
    out = rep.to_json()
    if args.csv:
        return _csv_row(_flat(out)), EXIT_OK
    return out, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="upset", description="Universal point set lower-bound toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gadget", help="write the nested-triangle gadget graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("grid-embed", help="draw a triangulation on the shift-method grid")
    s.add_argument("--graph", required=True)
    s.add_argument("-o", "--output", required=True, help="point CSV to write")
    s.add_argument("--placement", help="also write placement JSON here")
    s.set_defaults(func=cmd_grid_embed)

    s = sub.add_parser("embed-check", help="search for a straight-line embedding into a point set")
    s.add_argument("--graph", required=True)
    s.add_argument("--points", required=True)
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_embed_check)

    s = sub.add_parser("witness", help="extract a monotone witness from a gadget drawing")
    s.add_argument("--graph", required=True)
    s.add_argument("--points", required=True)
    s.add_argument("--placement", required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("certify", help="certify that a point set is not n-universal")
    s.add_argument("--points", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("lis", help="longest increasing/decreasing subsequence")
    s.add_argument("--perm", required=True)
    s.set_defaults(func=cmd_lis)

    s = sub.add_parser("bound", help="theorem threshold and tail")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("chain", help="evaluate the union-bound inequality chain")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_chain)

    for name, func in (("mc", cmd_mc), ("thm1", cmd_thm1)):
        s = sub.add_parser(name, help="Monte Carlo tail estimate" if name == "mc" else "theorem-threshold experiment")
        if name == "mc":
            s.add_argument("--m", type=int, required=True)
            s.add_argument("--ell", type=int, required=True)
            s.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.POINTS.value)
        else:
            s.add_argument("--n", type=int, required=True)
            s.add_argument("--m", type=int, help="override the threshold point count")
            s.add_argument("--ell", type=int, help="override n // 12")
        s.add_argument("--trials", type=int, required=True)
        s.add_argument("--seed", type=int, required=True)
        s.add_argument("--workers", type=int, default=1)
        fmt = s.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")
        s.set_defaults(func=func)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = _now()
    try:
        payload, code = args.func(args)
    except (UpsetError, OSError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "manifest": _manifest(args, started)}
        sys.stdout.write(json.dumps(err) + "\n")
        return EXIT_PRECONDITION
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        payload["manifest"] = _manifest(args, started)
        sys.stdout.write(json.dumps(payload) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Readers and writers for edge lists, point CSVs and placement JSON.

Edge list: ``n m`` header, then ``u v`` per line (0-indexed).  Gadget files
also carry ``# gadget k=<k>`` and one ``# v <id> <cycle> <pos>`` line per vertex.
Point CSV: ``lattice_bits=40`` header, then ``x,y`` integers per line.
Placement JSON: ``{"placement": [[v, x, y], ...]}``.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import List, Sequence, Tuple

from .embedder import StraightLineEmbedding
from .errors import FormatError
from .geometry import LATTICE_BITS, Point
from .graphs import GadgetGraph, PlanarGraph, build_gadget

_GADGET_RE = re.compile(r"#\s*gadget\s+k=(\d+)")


def format_edges(g: PlanarGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    if isinstance(g, GadgetGraph):
        lines.append(f"# gadget k={g.k}")
        lines += [f"# v {v} {i} {j}" for v, (i, j) in enumerate(g.labels)]
    return "\n".join(lines) + "\n"


def parse_edges(text: str) -> PlanarGraph:
    header = None
    edges: List[Tuple[int, int]] = []
    k = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            mt = _GADGET_RE.match(line)
            if mt:
                k = int(mt.group(1))
            continue
        try:
            a, b = (int(t) for t in line.split())
        except ValueError:
            raise FormatError(f"bad edge-list line: {raw!r}") from None
        if header is None:
            header = (a, b)
        else:
            edges.append((a, b))
    if header is None:
        raise FormatError("empty edge list")
    n, m = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    if k is not None:
        g = build_gadget(6 * k)
        if n != g.n or {tuple(sorted(e)) for e in edges} != set(g.edges):
            raise FormatError("gadget annotation does not match the edge list")
        return g
    return PlanarGraph(n, edges)


def read_edges(path) -> PlanarGraph:
    return parse_edges(Path(path).read_text(encoding="utf-8"))


def write_edges(g: PlanarGraph, path) -> None:
    Path(path).write_text(format_edges(g), encoding="utf-8", newline="\n")


def format_points(points: Sequence) -> str:
    lines = [f"lattice_bits={LATTICE_BITS}"] + [f"{p[0]},{p[1]}" for p in points]
    return "\n".join(lines) + "\n"


def parse_points(text: str) -> List[Point]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("lattice_bits="):
        raise FormatError("point file must start with a lattice_bits= header")
    pts = []
    for ln in lines[1:]:
        try:
            x, y = (int(t) for t in ln.split(","))
        except ValueError:
            raise FormatError(f"bad point line: {ln!r}") from None
        pts.append(Point(x, y))
    return pts


def read_points(path) -> List[Point]:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_points(points: Sequence, path) -> None:
    Path(path).write_text(format_points(points), encoding="utf-8", newline="\n")


def placement_json(e: StraightLineEmbedding) -> list:
    return [[v, p.x, p.y] for v, p in enumerate(e.placement)]


def parse_placement(obj, g: PlanarGraph) -> StraightLineEmbedding:
    rows = obj["placement"] if isinstance(obj, dict) else obj
    where = [None] * g.n
    for v, x, y in rows:
        if not 0 <= v < g.n or where[v] is not None:
            raise FormatError(f"placement row for vertex {v} is out of range or repeated")
        where[v] = Point(int(x), int(y))
    if any(p is None for p in where):
        raise FormatError("placement does not cover every vertex")
    return StraightLineEmbedding(g, tuple(where))


def read_placement(path, g: PlanarGraph) -> StraightLineEmbedding:
    return parse_placement(json.loads(Path(path).read_text(encoding="utf-8")), g)

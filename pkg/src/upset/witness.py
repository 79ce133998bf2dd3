"""Monotone witnesses from gadget drawings, and the non-universality certifier.

Any straight-line drawing of the gadget nests at least half of its cycles.
The bounding box of each nested triangle shares a corner with the triangle;
bottom-left/top-right shared corners form an increasing chain and
top-left/bottom-right ones a decreasing chain.  The larger chain has at least
``n/12`` points.  Read backwards: a point set whose longest monotone
subsequence is shorter than ``n // 12`` cannot host every n-vertex planar graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .embedder import StraightLineEmbedding, verify_embedding
from .errors import InvalidEmbedding, MonotoneViolation, NestingNotFound, NotAGadget, UpsetError
from .geometry import Point, Triangle, bounding_box, triangle_strictly_inside
from .graphs import GadgetGraph
from .permutations import lds, lis, perm_of


class Corner(Enum):
    BL = "bottom-left"
    TR = "top-right"
    TL = "top-left"
    BR = "bottom-right"


class Direction(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class NestedTriangle:
    cycle: int  # 1-based gadget cycle index
    triangle: Triangle


@dataclass(frozen=True)
class CornerHit:
    point: Point
    role: Corner
    cycle: Optional[int] = None


@dataclass(frozen=True)
class MonotoneWitness:
    points: Tuple[Point, ...]
    direction: Direction
    provenance: Tuple[CornerHit, ...]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class NonUniversalityCertificate:
    n: int
    m: int
    ell: int
    lis: int
    lds: int

    def __post_init__(self):
        if max(self.lis, self.lds) >= self.ell:
            raise UpsetError("certificate requires max(lis, lds) < ell")


def _cycle_triangles(e: StraightLineEmbedding) -> List[Triangle]:
    g = e.graph
    if not isinstance(g, GadgetGraph):
        raise NotAGadget(f"{g!r} is not a gadget graph")
    if not verify_embedding(e):
        raise InvalidEmbedding("placement is not a crossing-free injective drawing")
    return [Triangle(*(e.placement[v] for v in g.cycle_vertices(i))) for i in range(1, g.cycles + 1)]


def extract_nested_triangles(e: StraightLineEmbedding) -> List[NestedTriangle]:
    """Longest run of consecutively nested cycle triangles, outermost first.

    Runs are scanned in both directions along the cycle sequence; only runs
    that cover the first k or the last k cycles qualify.
    """
    tris = _cycle_triangles(e)
    k = e.graph.k
    c = len(tris)
    best: Optional[Tuple[int, int]] = None  # inclusive 0-based cycle range

    # Forward: cycle i+1 inside cycle i.  Backward: cycle i inside cycle i+1.
    inside_next = [triangle_strictly_inside(tris[i + 1], tris[i]) for i in range(c - 1)]
    inside_prev = [triangle_strictly_inside(tris[i], tris[i + 1]) for i in range(c - 1)]
    candidates = []
    for flags, outer_first in ((inside_next, True), (inside_prev, False)):
        start = 0
        for i in range(c):
            if i == c - 1 or not flags[i]:
                candidates.append((start, i, outer_first))
                start = i + 1
    chosen = None
    for lo, hi, outer_first in candidates:
        if not (lo == 0 and hi >= k - 1 or hi == c - 1 and lo <= c - k):
            continue
        if best is None or hi - lo > best[1] - best[0]:
            best = (lo, hi)
            chosen = outer_first
    if best is None:
        raise NestingNotFound("neither the first nor the last k cycles are nested")
    idx = list(range(best[0], best[1] + 1))
    if not chosen:
        idx.reverse()
    return [NestedTriangle(i + 1, tris[i]) for i in idx]


def shared_corner(t: Triangle) -> Tuple[Point, Corner]:
    """A bounding-box corner that is also a triangle corner (BL, TR, TL, BR order)."""
    box = bounding_box(t)
    corners = set(t.corners)
    for role, p in (
        (Corner.BL, box.bottom_left),
        (Corner.TR, box.top_right),
        (Corner.TL, box.top_left),
        (Corner.BR, box.bottom_right),
    ):
        if p in corners:
            return p, role
    raise AssertionError(f"no shared corner for {t}")  # impossible for a real triangle


def _check_monotone(points: Sequence[Point], increasing: bool) -> None:
    for a, b in zip(points, points[1:]):
        if not a.x < b.x:
            raise MonotoneViolation(f"x not strictly increasing at {a}, {b}")
        if increasing and not a.y < b.y or not increasing and not a.y > b.y:
            raise MonotoneViolation(f"y order broken at {a}, {b}")


def classify_corners(corners: Sequence) -> Tuple[List[CornerHit], List[CornerHit]]:
    """Split shared corners into the increasing (BL/TR) and decreasing (TL/BR) chains.

    Accepts ``(point, role)`` pairs or :class:`CornerHit` objects; each chain
    is returned sorted by x and checked for strict monotonicity.
    """
    hits = [c if isinstance(c, CornerHit) else CornerHit(Point(*c[0]), c[1]) for c in corners]
    s1 = sorted((h for h in hits if h.role in (Corner.BL, Corner.TR)), key=lambda h: h.point.x)
    s2 = sorted((h for h in hits if h.role in (Corner.TL, Corner.BR)), key=lambda h: h.point.x)
    _check_monotone([h.point for h in s1], True)
    _check_monotone([h.point for h in s2], False)
    return s1, s2


def monotone_witness(e: StraightLineEmbedding) -> MonotoneWitness:
    nested = extract_nested_triangles(e)
    k = e.graph.k
    c = e.graph.cycles
    first = {nt.cycle for nt in nested} >= set(range(1, k + 1))
    keep = set(range(1, k + 1)) if first else set(range(c - k + 1, c + 1))
    hits = []
    for nt in nested:
        if nt.cycle in keep:
            p, role = shared_corner(nt.triangle)
            hits.append(CornerHit(p, role, nt.cycle))
    s1, s2 = classify_corners(hits)
    if len(s1) >= len(s2):
        chain, direction = s1, Direction.INCREASING
    else:
        chain, direction = s2, Direction.DECREASING
    return MonotoneWitness(tuple(h.point for h in chain), direction, tuple(chain))


def certify_nonuniversal(points: Sequence, n: int) -> Optional[NonUniversalityCertificate]:
    """Certificate that ``points`` is not n-universal, or None if inconclusive.

    None never means the set is universal.  Raises DuplicateCoordinate when
    two points share an x or a y coordinate.
    """
    if n < 12:
        raise UpsetError(f"certifier needs n >= 12, got {n}")
    pi = perm_of(points)
    ell = n // 12
    a, d = lis(pi), lds(pi)
    if max(a, d) < ell:
        return NonUniversalityCertificate(n, len(pi), ell, a, d)
    return None

"""Exact planar predicates on integer lattice points.

Coordinates are plain Python ints.  Points sampled in the unit square live on
a ``2**LATTICE_BITS`` lattice; grid drawings use small integer ranges.  Every
predicate is a sign test of an integer cross product, so there is no rounding
and no epsilon anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import NamedTuple, Tuple

from .errors import DegenerateBox, DegenerateTriangle

LATTICE_BITS = 40
LATTICE_SIZE = 1 << LATTICE_BITS

# |coordinate| < 2**62 keeps every cross product below 2**127 in magnitude.
COORD_LIMIT = 1 << 62
_CROSS_LIMIT = 1 << 127


class Point(NamedTuple):
    x: int
    y: int


Segment = Tuple[Point, Point]


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Location(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def cross(p, q, r) -> int:
    """Doubled signed area of (p, q, r), i.e. (q - p) x (r - p)."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    assert -_CROSS_LIMIT < d < _CROSS_LIMIT, "coordinate range exceeded"
    return d


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def orient(p, q, r) -> Orientation:
    return Orientation(_sign(cross(p, q, r)))


def _between(p, a, b) -> bool:
    # p is known to be collinear with a, b; test closed-segment membership
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def on_segment_interior(p, a, b) -> bool:
    """True iff p lies on the closed segment ab but is neither endpoint."""
    if p == a or p == b:
        return False
    return cross(a, b, p) == 0 and _between(p, a, b)


def segments_conflict(s1: Segment, s2: Segment) -> bool:
    """True iff the closed segments meet anywhere besides a shared endpoint.

    A proper crossing, a collinear overlap of positive length, or an endpoint
    of one segment touching the other segment away from a shared endpoint all
    count as conflicts.
    """
    a, b = s1
    c, d = s2
    o1 = _sign(cross(a, b, c))
    o2 = _sign(cross(a, b, d))

    if o1 == 0 and o2 == 0:
        # Both on one line: project onto the dominant axis.
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo < hi:
            return True
        if lo > hi:
            return False
        # Touching in a single point: only harmless if it is a shared endpoint.
        return not (a in (c, d) or b in (c, d))

    o3 = _sign(cross(c, d, a))
    o4 = _sign(cross(c, d, b))
    if a == c or a == d or b == c or b == d:
        # Non-collinear segments with a common endpoint meet only there.
        return False
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _between(c, a, b):
        return True
    if o2 == 0 and _between(d, a, b):
        return True
    if o3 == 0 and _between(a, c, d):
        return True
    if o4 == 0 and _between(b, c, d):
        return True
    return False


@dataclass(frozen=True)
class Triangle:
    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        if cross(self.a, self.b, self.c) == 0:
            raise DegenerateTriangle(f"collinear corners {self.a}, {self.b}, {self.c}")

    @property
    def corners(self) -> Tuple[Point, Point, Point]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class Box:
    xmin: int
    xmax: int
    ymin: int
    ymax: int

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise DegenerateBox(f"[{self.xmin},{self.xmax}]x[{self.ymin},{self.ymax}]")

    @property
    def bottom_left(self) -> Point:
        return Point(self.xmin, self.ymin)

    @property
    def top_right(self) -> Point:
        return Point(self.xmax, self.ymax)

    @property
    def top_left(self) -> Point:
        return Point(self.xmin, self.ymax)

    @property
    def bottom_right(self) -> Point:
        return Point(self.xmax, self.ymin)


def doubled_area(t: Triangle) -> int:
    return abs(cross(t.a, t.b, t.c))


def point_in_triangle(p, t: Triangle) -> Location:
    s = _sign(cross(t.a, t.b, t.c))
    d1 = _sign(cross(t.a, t.b, p)) * s
    d2 = _sign(cross(t.b, t.c, p)) * s
    d3 = _sign(cross(t.c, t.a, p)) * s
    if d1 < 0 or d2 < 0 or d3 < 0:
        return Location.OUTSIDE
    if d1 == 0 or d2 == 0 or d3 == 0:
        return Location.BOUNDARY
    return Location.INSIDE


def bounding_box(t: Triangle) -> Box:
    xs = (t.a.x, t.b.x, t.c.x)
    ys = (t.a.y, t.b.y, t.c.y)
    return Box(min(xs), max(xs), min(ys), max(ys))


def triangle_strictly_inside(inner: Triangle, outer: Triangle) -> bool:
    return all(point_in_triangle(p, outer) is Location.INSIDE for p in inner.corners)


def box_nested(inner: Box, outer: Box) -> bool:
    return (
        outer.xmin <= inner.xmin
        and inner.xmax <= outer.xmax
        and outer.ymin <= inner.ymin
        and inner.ymax <= outer.ymax
    )

"""Planar graphs, the nested-cycle gadget family and a random triangulation generator."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidN, UpsetError
from .geometry import Point, cross

Edge = Tuple[int, int]
Face = Tuple[int, int, int]


class PlanarGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``faces`` optionally carries a consistently oriented list of triangular
    faces (a combinatorial embedding).  Generators in this module fill it in;
    graphs read from files leave it empty and the embedder derives one.
    The 3n-6 edge bound is not enforced here so that non-planar inputs can be
    represented and rejected by :func:`validate_maximal_planar`.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]], faces: Optional[Sequence[Face]] = None):
        if n < 0:
            raise UpsetError(f"negative vertex count {n}")
        canon = set()
        for u, v in edges:
            if u == v:
                raise UpsetError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UpsetError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in canon:
                raise UpsetError(f"parallel edge {e}")
            canon.add(e)
        self.n = n
        self.edges: Tuple[Edge, ...] = tuple(sorted(canon))
        adj: List[List[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edge_set = frozenset(canon)
        self.faces: Optional[Tuple[Face, ...]] = tuple(faces) if faces is not None else None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class GadgetGraph(PlanarGraph):
    """Stack of ``2k`` triangles, consecutive ones joined as an antiprism.

    Vertex ``3*(i-1) + j`` is position ``j`` of cycle ``i`` (1-based cycles).
    """

    def __init__(self, k: int, edges, faces=None):
        super().__init__(6 * k, edges, faces)
        self.k = k
        self.labels: Tuple[Tuple[int, int], ...] = tuple(
            (v // 3 + 1, v % 3) for v in range(6 * k)
        )

    @property
    def cycles(self) -> int:
        return 2 * self.k

    def cycle_vertices(self, i: int) -> Tuple[int, int, int]:
        base = 3 * (i - 1)
        return (base, base + 1, base + 2)


def gadget_vertex(i: int, j: int) -> int:
    return 3 * (i - 1) + (j % 3)


def build_gadget(n: int) -> GadgetGraph:
    if n < 12 or n % 12:
        raise InvalidN(f"gadget size must be a positive multiple of 12, got {n}")
    k = n // 6
    edges = []
    for i in range(1, 2 * k + 1):
        for j in range(3):
            edges.append((gadget_vertex(i, j), gadget_vertex(i, j + 1)))
            if i < 2 * k:
                edges.append((gadget_vertex(i, j), gadget_vertex(i + 1, j)))
                edges.append((gadget_vertex(i, j), gadget_vertex(i + 1, j + 1)))

    faces: List[Face] = [(0, 1, 2), tuple(gadget_vertex(2 * k, j) for j in range(3))]
    for i in range(1, 2 * k):
        for j in range(3):
            o0, o1 = gadget_vertex(i, j), gadget_vertex(i, j + 1)
            i0, i1 = gadget_vertex(i + 1, j), gadget_vertex(i + 1, j + 1)
            faces.append((o0, o1, i1))
            faces.append((o0, i1, i0))

    # Orient every face from the reference drawing; the outermost cap is the
    # unbounded face and therefore runs clockwise.
    draw = gadget_reference_drawing(k)
    oriented = []
    for idx, (a, b, c) in enumerate(faces):
        ccw = cross(draw[a], draw[b], draw[c]) > 0
        want_ccw = idx != 0
        oriented.append((a, b, c) if ccw == want_ccw else (a, c, b))
    return GadgetGraph(k, edges, oriented)


def gadget_reference_drawing(k: int, scale: int = 8) -> List[Point]:
    """Crossing-free drawing of the gadget on homothetic nested triangles.

    Cycle ``i`` is the triangle (-s,-s), (2s,0), (0,2s) with ``s = scale*(2k+1-i)``,
    shifted into the positive quadrant.  Every triangle's bottom-left bounding
    box corner is its first corner.
    """
    off = scale * 2 * k
    pts = []
    for i in range(1, 2 * k + 1):
        s = scale * (2 * k + 1 - i)
        pts.extend([Point(off - s, off - s), Point(off + 2 * s, off), Point(off, off + 2 * s)])
    return pts


def random_maximal_planar(n: int, seed: int) -> PlanarGraph:
    """Triangulation grown by stacking vertices into uniformly chosen faces."""
    if n < 3:
        raise InvalidN(f"need n >= 3, got {n}")
    rng = random.Random(seed)
    edges = [(0, 1), (1, 2), (0, 2)]
    faces: List[Face] = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        idx = rng.randrange(len(faces))
        a, b, c = faces[idx]
        faces[idx] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
        edges.extend([(a, v), (b, v), (c, v)])
    return PlanarGraph(n, edges, faces)


def complete_graph(n: int) -> PlanarGraph:
    return PlanarGraph(n, combinations(range(n), 2))


def path_graph(n: int) -> PlanarGraph:
    return PlanarGraph(n, [(i, i + 1) for i in range(n - 1)])


def _connected_without(g: PlanarGraph, removed: frozenset) -> bool:
    alive = [v for v in range(g.n) if v not in removed]
    if len(alive) <= 1:
        return True
    seen = {alive[0]}
    todo = deque([alive[0]])
    while todo:
        v = todo.popleft()
        for w in g.adjacency[v]:
            if w not in seen and w not in removed:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(alive)


def is_three_connected(g: PlanarGraph) -> bool:
    """Exhaustive check that no set of at most two vertices disconnects ``g``."""
    if g.n < 4:
        return False
    if not _connected_without(g, frozenset()):
        return False
    for v in range(g.n):
        if not _connected_without(g, frozenset((v,))):
            return False
    for u, v in combinations(range(g.n), 2):
        if not _connected_without(g, frozenset((u, v))):
            return False
    return True


def degree_profile(g: PlanarGraph) -> List[int]:
    return [g.degree(v) for v in range(g.n)]


@dataclass
class ValidationReport:
    n: int
    m: int
    edge_count_ok: bool
    embedding_ok: bool
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.edge_count_ok and self.embedding_ok

    def __bool__(self) -> bool:
        return self.ok


def validate_maximal_planar(g: PlanarGraph) -> ValidationReport:
    """Check 3n-6 edges and certify planarity by drawing the graph on a grid."""
    from .embedder import grid_embed, verify_embedding

    failures = []
    edge_ok = g.m == 3 * g.n - 6
    if not edge_ok:
        failures.append(f"edge count {g.m} != 3n-6 = {3 * g.n - 6}")
    embed_ok = False
    if edge_ok:
        try:
            embed_ok = verify_embedding(grid_embed(g))
            if not embed_ok:
                failures.append("grid drawing has a crossing")
        except UpsetError as exc:
            failures.append(f"grid embedding failed: {exc}")
    else:
        failures.append("grid embedding skipped")
    return ValidationReport(g.n, g.m, edge_ok, embed_ok, failures)

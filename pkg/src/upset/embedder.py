"""Straight-line embeddings: verification, point-set embeddability, grid drawings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .errors import NotMaximalPlanar, SearchBudgetExceeded
from .geometry import Point, on_segment_interior, segments_conflict
from .graphs import PlanarGraph


@dataclass(frozen=True)
class StraightLineEmbedding:
    graph: PlanarGraph
    placement: tuple  # placement[v] is the Point of vertex v

    def segment(self, u: int, v: int):
        return (self.placement[u], self.placement[v])


def verify_embedding(e: StraightLineEmbedding) -> bool:
    g, pos = e.graph, e.placement
    if len(pos) != g.n or len(set(pos)) != g.n:
        return False

    # Edges sorted by left end; only pairs with overlapping x-ranges are tested.
    segs = []
    for u, v in g.edges:
        a, b = pos[u], pos[v]
        segs.append((min(a.x, b.x), max(a.x, b.x), min(a.y, b.y), max(a.y, b.y), a, b))
    segs.sort(key=lambda s: s[0])
    for i, (x0, x1, y0, y1, a, b) in enumerate(segs):
        for j in range(i + 1, len(segs)):
            u0, u1, w0, w1, c, d = segs[j]
            if u0 > x1:
                break
            if w0 > y1 or w1 < y0:
                continue
            if segments_conflict((a, b), (c, d)):
                return False

    # A vertex with incident edges touching another edge is caught above;
    # isolated vertices need an explicit test.
    for v in range(g.n):
        if g.adjacency[v]:
            continue
        p = pos[v]
        for _, _, _, _, a, b in segs:
            if on_segment_interior(p, a, b):
                return False
    return True


# ---------------------------------------------------------------------------
# Embeddability search
# ---------------------------------------------------------------------------

@dataclass
class SearchOutcome:
    embedding: Optional[StraightLineEmbedding]
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.embedding is not None


def search_embedding(g: PlanarGraph, points: Sequence[Point], budget: Optional[int] = None) -> SearchOutcome:
    """Exhaustive backtracking for a crossing-free placement of ``g`` into ``points``.

    Vertices are chosen most-constrained-first (most placed neighbours, then
    highest degree, then lowest id).  A placement is pruned as soon as a new
    edge conflicts with a placed edge or passes through a placed vertex.
    Raises :class:`SearchBudgetExceeded` once ``budget`` placements have been
    tried without a decision.
    """
    pts = [Point(*p) for p in points]
    n = g.n
    if len(set(pts)) < n:
        return SearchOutcome(None, 0)
    pts = list(dict.fromkeys(pts))

    adj = g.adjacency
    where: List[Optional[Point]] = [None] * n
    used = set()
    placed_edges: List[tuple] = []
    placed_points: List[Point] = []
    nplaced_nbrs = [0] * n
    expanded = 0

    def admissible(v: int, p: Point) -> bool:
        for a, b in placed_edges:
            if on_segment_interior(p, a, b):
                return False
        new = [(p, where[w]) for w in adj[v] if where[w] is not None]
        for seg in new:
            q = seg[1]
            for r in placed_points:
                if r is not q and on_segment_interior(r, p, q):
                    return False
            for old in placed_edges:
                if segments_conflict(seg, old):
                    return False
        for i in range(len(new)):
            for j in range(i + 1, len(new)):
                if segments_conflict(new[i], new[j]):
                    return False
        return True

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if where[v] is None:
                k = (nplaced_nbrs[v], len(adj[v]), -v)
                if key is None or k > key:
                    best, key = v, k
        return best

    def place(v: int, p: Point) -> int:
        where[v] = p
        used.add(p)
        placed_points.append(p)
        added = 0
        for w in adj[v]:
            nplaced_nbrs[w] += 1
            if where[w] is not None:
                placed_edges.append((p, where[w]))
                added += 1
        return added

    def unplace(v: int, added: int) -> None:
        del placed_edges[len(placed_edges) - added:]
        for w in adj[v]:
            nplaced_nbrs[w] -= 1
        placed_points.pop()
        used.discard(where[v])
        where[v] = None

    def solve(depth: int) -> bool:
        nonlocal expanded
        if depth == n:
            return True
        v = pick()
        for p in pts:
            if p in used:
                continue
            expanded += 1
            if budget is not None and expanded > budget:
                raise SearchBudgetExceeded(expanded - 1)
            if not admissible(v, p):
                continue
            added = place(v, p)
            if solve(depth + 1):
                return True
            unplace(v, added)
        return False

    if solve(0):
        return SearchOutcome(StraightLineEmbedding(g, tuple(where)), expanded)
    return SearchOutcome(None, expanded)


def embeddable(g: PlanarGraph, points: Sequence[Point], budget: Optional[int] = None) -> Optional[StraightLineEmbedding]:
    return search_embedding(g, points, budget).embedding


# ---------------------------------------------------------------------------
# Grid drawing (canonical ordering + shift method)
# ---------------------------------------------------------------------------

def rotation_system(g: PlanarGraph) -> Dict[int, Dict[int, int]]:
    """Successor map ``nxt[v][x] = y`` such that (v, x, y) is a face.

    Uses the faces recorded by the generators when present, otherwise a
    planar embedding computed by networkx.  Any inconsistency means ``g`` is
    not a triangulation.
    """
    nxt: Dict[int, Dict[int, int]] = {v: {} for v in range(g.n)}
    if g.faces is not None:
        for a, b, c in g.faces:
            for v, x, y in ((a, b, c), (b, c, a), (c, a, b)):
                if x in nxt[v]:
                    raise NotMaximalPlanar(f"face list revisits corner {v} at {x}")
                nxt[v][x] = y
    else:
        import networkx as nx

        ok, emb = nx.check_planarity(_to_networkx(g))
        if not ok:
            raise NotMaximalPlanar("graph is not planar")
        for v in range(g.n):
            order = list(emb.neighbors_cw_order(v))
            for i, x in enumerate(order):
                nxt[v][x] = order[(i + 1) % len(order)]

    for v in range(g.n):
        succ = nxt[v]
        if set(succ) != set(g.adjacency[v]):
            raise NotMaximalPlanar(f"rotation at {v} does not match its neighbours")
        for x, y in succ.items():
            if not g.has_edge(x, y):
                raise NotMaximalPlanar(f"face ({v}, {x}, {y}) is not a triangle")
        if succ:
            start = next(iter(succ))
            x, steps = succ[start], 1
            while x != start:
                x, steps = succ[x], steps + 1
            if steps != len(succ):
                raise NotMaximalPlanar(f"rotation at {v} is not a single cycle")
    return nxt


def _to_networkx(g: PlanarGraph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def canonical_ordering(g: PlanarGraph, nxt: Optional[Dict[int, Dict[int, int]]] = None) -> List[int]:
    """Canonical ordering v1, v2, ..., vn of a triangulation.

    Built by peeling: starting from the outer face (v1, vn, v2), repeatedly
    remove an outer vertex other than v1, v2 that has no chord to the outer
    cycle.  The outer cycle is kept as a path v1 ... v2 running over the top.
    """
    n = g.n
    if n < 3 or g.m != 3 * n - 6:
        raise NotMaximalPlanar(f"n={n}, m={g.m}: not a triangulation")
    if nxt is None:
        nxt = rotation_system(g)
    v1 = 0
    vn = g.adjacency[v1][0]
    v2 = nxt[v1][vn]

    removed = [False] * n
    cycle = [v1, vn, v2]
    order_rev = []
    for _ in range(n - 2):
        pos = {w: i for i, w in enumerate(cycle)}
        chosen = -1
        for i in range(1, len(cycle) - 1):
            w = cycle[i]
            if all(
                removed[u] or u not in pos or abs(pos[u] - i) <= 1
                for u in g.adjacency[w]
            ):
                chosen = i
                break
        if chosen < 0:
            raise NotMaximalPlanar("canonical ordering got stuck")
        w = cycle[chosen]
        left, right = cycle[chosen - 1], cycle[chosen + 1]
        inner = []
        x = nxt[w][left]
        while x != right:
            if removed[x] or x in pos:
                raise NotMaximalPlanar("inconsistent rotation during peeling")
            inner.append(x)
            x = nxt[w][x]
            if len(inner) > n:
                raise NotMaximalPlanar("rotation loop")
        removed[w] = True
        order_rev.append(w)
        cycle[chosen:chosen + 1] = inner
    if cycle != [v1, v2]:
        raise NotMaximalPlanar("peeling did not end at the base edge")
    return [v1, v2] + order_rev[::-1]


def grid_embed(g: PlanarGraph) -> StraightLineEmbedding:
    """Shift-method drawing of a triangulation on the (2n-4) x (n-2) grid."""
    n = g.n
    if n == 3 and g.m == 3:
        return StraightLineEmbedding(g, (Point(0, 0), Point(2, 0), Point(1, 1)))
    order = canonical_ordering(g)
    x = [0] * n
    y = [0] * n
    v1, v2, v3 = order[:3]
    x[v1], y[v1] = 0, 0
    x[v2], y[v2] = 2, 0
    x[v3], y[v3] = 1, 1
    shift_set = {v1: [v1], v2: [v2], v3: [v3]}
    contour = [v1, v3, v2]

    for v in order[3:]:
        idx = [i for i, w in enumerate(contour) if g.has_edge(v, w)]
        if len(idx) < 2:
            raise NotMaximalPlanar(f"vertex {v} sees fewer than two contour vertices")
        p, q = idx[0], idx[-1]
        if idx != list(range(p, q + 1)):
            raise NotMaximalPlanar(f"contour neighbours of {v} are not contiguous")
        for w in contour[p + 1:q]:
            for u in shift_set[w]:
                x[u] += 1
        for w in contour[q:]:
            for u in shift_set[w]:
                x[u] += 2
        wp, wq = contour[p], contour[q]
        dx = x[wq] - x[wp] + y[wq] - y[wp]
        assert dx % 2 == 0
        x[v] = x[wp] + dx // 2
        y[v] = y[wp] + dx // 2
        covered = [v]
        for w in contour[p + 1:q]:
            covered.extend(shift_set[w])
        shift_set[v] = covered
        contour[p + 1:q] = [v]

    return StraightLineEmbedding(g, tuple(Point(x[v], y[v]) for v in range(n)))

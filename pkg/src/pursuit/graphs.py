"""Graph core: immutable simple graphs, metrics, and territory-relative path predicates.

Vertices are opaque hashable ids (ints or strings).  All orderings used for
tie-breaking go through :func:`vkey`, so every operation in this module is
deterministic even with mixed id types.
"""

from __future__ import annotations

import math
import shlex
from collections import deque
from typing import Hashable, Iterable, Iterator, Sequence

Vertex = Hashable

INF = math.inf


def vkey(v: Vertex):
    """Total-order key for vertex ids; ints sort before strings."""
    if isinstance(v, bool):  # bool is an int subclass; keep ids sane
        raise TypeError("bool vertex ids are not supported")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def path_key(path: Sequence[Vertex]):
    """Lexicographic key over a vertex sequence, for deterministic tie-breaks."""
    return tuple(vkey(v) for v in path)


class Graph:
    """Finite simple undirected graph, immutable after construction.

    Adjacency is stored symmetric and irreflexive; neighbor tuples are sorted
    by :func:`vkey` so iteration order is reproducible.
    """

    __slots__ = ("_adj", "_vertices", "_edge_count")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[tuple[Vertex, Vertex]] = ()):
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            adj.setdefault(u, set())
            adj.setdefault(v, set())
            adj[u].add(v)
            adj[v].add(u)
        self._adj: dict[Vertex, tuple[Vertex, ...]] = {
            v: tuple(sorted(ns, key=vkey)) for v, ns in adj.items()
        }
        self._vertices: tuple[Vertex, ...] = tuple(sorted(adj, key=vkey))
        self._edge_count = sum(len(ns) for ns in self._adj.values()) // 2

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return self._edge_count

    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    def __contains__(self, v: Vertex) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._vertices)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        """Open neighborhood N(v)."""
        return self._adj[v]

    def closed_neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        """Closed neighborhood N[v], sorted."""
        return tuple(sorted(self._adj[v] + (v,), key=vkey))

    def closed_neighborhood_of(self, vs: Iterable[Vertex]) -> set[Vertex]:
        """N[H] for a vertex set H."""
        out: set[Vertex] = set()
        for v in vs:
            out.add(v)
            out.update(self._adj[v])
        return out

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def edges(self) -> list[tuple[Vertex, Vertex]]:
        out = []
        for u in self._vertices:
            for v in self._adj[u]:
                if vkey(u) < vkey(v):
                    out.append((u, v))
        return out

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, keep: Iterable[Vertex]) -> "Graph":
        """Induced subgraph on `keep`; vertex ids are preserved."""
        ks = set(keep)
        return Graph(
            ks,
            ((u, v) for u in ks for v in self._adj[u] if v in ks and vkey(u) < vkey(v)),
        )

    def without(self, removed: Iterable[Vertex]) -> "Graph":
        rm = set(removed)
        return self.subgraph(v for v in self._vertices if v not in rm)

    # -- connectivity and metrics -------------------------------------------

    def components(self) -> list[set[Vertex]]:
        seen: set[Vertex] = set()
        comps = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def component_of(self, v: Vertex) -> set[Vertex]:
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        return comp

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_of(self._vertices[0])) == self.n

    def distances(self, source: Vertex) -> dict[Vertex, int]:
        """Exact BFS distances from `source`; vertices absent from the result
        are unreachable."""
        if source not in self._adj:
            raise KeyError(f"unknown vertex {source!r}")
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        return dist

    def distance(self, u: Vertex, v: Vertex) -> float:
        d = self.distances(u)
        return d.get(v, INF)

    def eccentricity(self, v: Vertex) -> float:
        d = self.distances(v)
        if len(d) < self.n:
            return INF
        return max(d.values(), default=0)

    def multi_source_distances(self, sources: Iterable[Vertex]) -> dict[Vertex, int]:
        """BFS distance to the nearest of `sources` (absent = unreachable)."""
        dist: dict[Vertex, int] = {}
        queue = deque()
        for s in sources:
            if s not in dist:
                dist[s] = 0
                queue.append(s)
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in self._adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        return dist


# -- paths ------------------------------------------------------------------


def is_path(g: Graph, p: Sequence[Vertex]) -> bool:
    """True iff p is a simple path of g (consecutive pairs adjacent, all distinct)."""
    if len(p) == 0 or len(set(p)) != len(p):
        return False
    if any(v not in g for v in p):
        return False
    return all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))


def path_edges(p: Sequence[Vertex]) -> list[frozenset]:
    return [frozenset((p[i], p[i + 1])) for i in range(len(p) - 1)]


def shortest_path(
    g: Graph,
    u: Vertex,
    v: Vertex,
    banned_edges: frozenset = frozenset(),
) -> tuple[Vertex, ...] | None:
    """Lexicographically least geodesic from u to v, or None if disconnected.

    `banned_edges` is a set of frozenset({a, b}) pairs excluded from the walk.
    """
    if u not in g or v not in g:
        raise KeyError("unknown vertex")
    # BFS from the target, then greedily descend from u picking the smallest
    # neighbor that stays on some geodesic: this yields the lex-min sequence.
    dist: dict[Vertex, int] = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for w in g.neighbors(x):
            if banned_edges and frozenset((x, w)) in banned_edges:
                continue
            if w not in dist:
                dist[w] = dx + 1
                queue.append(w)
    if u not in dist:
        return None
    path = [u]
    cur = u
    while cur != v:
        for w in g.neighbors(cur):
            if banned_edges and frozenset((cur, w)) in banned_edges:
                continue
            if dist.get(w, INF) == dist[cur] - 1:
                path.append(w)
                cur = w
                break
    return tuple(path)


def shortest_path_avoiding(
    g: Graph,
    u: Vertex,
    v: Vertex,
    avoid: Sequence[Sequence[Vertex]],
) -> tuple[Vertex, ...] | None:
    """Shortest u,v-path distinct (as a path) from every path in `avoid`.

    A u,v-path differs from a given u,v-path iff it misses at least one of its
    edges, so the minimum is taken over single-edge exclusions, one per avoided
    path.  Ties break lexicographically.  Returns None when no such path exists.
    """
    avoid = [p for p in avoid if p]
    for p in avoid:
        if len(p) == 1:
            raise ValueError("cannot avoid a single-vertex path with the same endpoints")
    if not avoid:
        return shortest_path(g, u, v)
    edge_lists = [path_edges(p) for p in avoid]

    def candidates(idx: int, banned: set) -> Iterator[tuple[Vertex, ...]]:
        if idx == len(edge_lists):
            got = shortest_path(g, u, v, banned_edges=frozenset(banned))
            if got is not None:
                yield got
            return
        for e in edge_lists[idx]:
            banned.add(e)
            yield from candidates(idx + 1, banned)
            banned.discard(e)

    best = None
    for cand in candidates(0, set()):
        if any(tuple(cand) == tuple(p) or tuple(cand) == tuple(reversed(p)) for p in avoid):
            continue
        if best is None or (len(cand), path_key(cand)) < (len(best), path_key(best)):
            best = cand
    return best


def alternative_paths(
    g: Graph,
    u: Vertex,
    v: Vertex,
    avoid: Sequence[Sequence[Vertex]],
    limit: int = 16,
) -> list[tuple[Vertex, ...]]:
    """Distinct u,v-paths avoiding the given ones, drawn from the single-edge
    exclusion sweep, sorted by (length, lexicographic) and truncated."""
    avoid = [tuple(p) for p in avoid if p]
    if not avoid:
        got = shortest_path(g, u, v)
        return [got] if got is not None else []
    edge_lists = [path_edges(p) for p in avoid]
    seen = set()
    out = []

    def rec(idx: int, banned: set):
        if idx == len(edge_lists):
            got = shortest_path(g, u, v, banned_edges=frozenset(banned))
            if got is not None and got not in seen:
                seen.add(got)
                if got not in avoid and tuple(reversed(got)) not in avoid:
                    out.append(got)
            return
        for e in edge_lists[idx]:
            banned.add(e)
            rec(idx + 1, banned)
            banned.discard(e)

    rec(0, set())
    out.sort(key=lambda p: (len(p), path_key(p)))
    return out[:limit]


# -- territory-relative predicates -------------------------------------------


def _min_simple_path_through(g: Graph, u: Vertex, v: Vertex, x: Vertex, want_path=False):
    """Exact length of a shortest simple u,v-path passing through x.

    Computed as a min-cost flow of value 2 from x to {u, v} on the
    vertex-split digraph (unit node capacities), which is exactly a pair of
    internally disjoint x->u and x->v paths of minimum total edge count.
    With want_path, returns (length, path) with the path reconstructed from
    the flow decomposition (None when no such path exists).
    """
    if x == u or x == v:
        got = shortest_path(g, u, v)
        if want_path:
            return (g.distance(u, v), got)
        return g.distance(u, v)
    # Node encoding: (w, 0) = in, (w, 1) = out.
    arcs: dict[tuple, dict[tuple, list]] = {}
    init_cap: dict[tuple, int] = {}

    def add(a, b, cap, cost):
        arcs.setdefault(a, {})[b] = [cap, cost]
        arcs.setdefault(b, {}).setdefault(a, [0, -cost])
        init_cap[(a, b)] = cap

    SRC = ("#src",)
    SNK = ("#snk",)
    for w in g.vertices():
        if w not in (u, v, x):
            add((w, 0), (w, 1), 1, 0)
    for a, b in g.edges():
        add((a, 1), (b, 0), 1, 1)
        add((b, 1), (a, 0), 1, 1)
    add(SRC, (x, 1), 2, 0)
    add((u, 0), SNK, 1, 0)
    add((v, 0), SNK, 1, 0)

    total = 0.0
    for _ in range(2):
        # Bellman-Ford shortest augmenting path (residual costs may be -1).
        dist = {SRC: 0}
        parent: dict[tuple, tuple] = {}
        for _ in range(2 * g.n + 3):
            changed = False
            for a, outs in arcs.items():
                da = dist.get(a)
                if da is None:
                    continue
                for b, (cap, cost) in outs.items():
                    if cap > 0 and da + cost < dist.get(b, INF):
                        dist[b] = da + cost
                        parent[b] = a
                        changed = True
            if not changed:
                break
        if SNK not in dist:
            return (INF, None) if want_path else INF
        total += dist[SNK]
        node = SNK
        while node != SRC:
            prev = parent[node]
            arcs[prev][node][0] -= 1
            arcs[node][prev][0] += 1
            node = prev
    if not want_path:
        return total

    # flow on a forward arc = initial capacity minus what is left
    flow = {
        ab: init_cap[ab] - arcs[ab[0]][ab[1]][0]
        for ab in init_cap
        if init_cap[ab] - arcs[ab[0]][ab[1]][0] > 0
    }

    def follow():
        """Trace one unit from x's out-node to the sink, consuming flow."""
        leg = [x]
        node = (x, 1)
        while True:
            nxt = None
            for b in sorted(arcs[node], key=repr):
                if flow.get((node, b), 0) > 0:
                    nxt = b
                    break
            if nxt is None:
                raise RuntimeError("flow decomposition failed")
            flow[(node, nxt)] -= 1
            if nxt == SNK:
                return leg
            if nxt[1] == 0 and nxt[0] != x:
                leg.append(nxt[0])
            node = nxt

    leg1 = follow()
    leg2 = follow()
    if leg1[-1] == v:
        leg1, leg2 = leg2, leg1
    if leg1[-1] != u or leg2[-1] != v:
        raise RuntimeError("flow legs did not reach the endpoints")
    path = tuple(reversed(leg1)) + tuple(leg2[1:])
    return (total, path)


def min_path_through_with_path(g: Graph, u: Vertex, v: Vertex, x: Vertex):
    return _min_simple_path_through(g, u, v, x, want_path=True)


def min_length_through_territory(g: Graph, t: Iterable[Vertex], u: Vertex, v: Vertex) -> float:
    """Minimum length over simple u,v-paths containing at least one vertex of t."""
    best = INF
    du = g.distances(u)
    dv = g.distances(v)
    # Cheap lower bound first; run the exact disjoint-path computation only on
    # territory vertices whose walk bound could still beat `best`.
    suspects = []
    for x in sorted(set(t), key=vkey):
        if x not in g:
            continue
        wb = du.get(x, INF) + dv.get(x, INF)
        suspects.append((wb, x))
    suspects.sort(key=lambda p: (p[0], vkey(p[1])))
    for wb, x in suspects:
        if wb >= best:
            break
        exact = _min_simple_path_through(g, u, v, x)
        if exact < best:
            best = exact
    return best


def is_isometric_path_relative(g: Graph, t: Iterable[Vertex], p: Sequence[Vertex]) -> bool:
    """True iff no u,v-path meeting the territory is shorter than p."""
    if not is_path(g, p):
        return False
    if len(p) == 1:
        return True
    u, v = p[0], p[-1]
    tset = set(t)
    k = len(p) - 1
    # Walk bound screen: only vertices that could witness a shorter path need
    # the exact check inside min_length_through_territory.
    du = g.distances(u)
    dv = g.distances(v)
    if all(du.get(x, INF) + dv.get(x, INF) >= k for x in tset if x in g):
        return True
    best = INF
    for x in sorted(tset, key=vkey):
        if x not in g or du.get(x, INF) + dv.get(x, INF) >= min(best, k):
            continue
        best = min(best, _min_simple_path_through(g, u, v, x))
        if best < k:
            return False
    return best >= k


def isometric_path_relative(
    g: Graph, t: Iterable[Vertex], u: Vertex, v: Vertex
) -> tuple[Vertex, ...] | None:
    """A u,v-path isometric relative to t (lex-least geodesic), or None.

    A global geodesic is never longer than any path meeting t, so it always
    satisfies the relative-isometry contract; the deterministic tie-break is
    the lexicographic minimum over geodesic vertex sequences.
    """
    if u == v:
        raise ValueError("endpoints must be distinct")
    return shortest_path(g, u, v)


def is_convex_path_relative(g: Graph, t: Iterable[Vertex], p: Sequence[Vertex]) -> bool:
    """Convexity of p relative to t: no x in t outside p with
    d(u0, x) = i - 1 and x adjacent to u_i.

    Raises ValueError if p is not isometric relative to t.
    """
    if not is_isometric_path_relative(g, t, p):
        raise ValueError("path is not isometric relative to the territory")
    on_path = set(p)
    tset = {x for x in t if x in g and x not in on_path}
    if not tset:
        return True
    d0 = g.distances(p[0])
    for i in range(1, len(p)):
        ui = p[i]
        for x in g.neighbors(ui):
            if x in tset and d0.get(x, INF) == i - 1:
                return False
    return True


# -- cycle and coloring utilities --------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or math.inf for forests."""
    best = INF
    for r in g.vertices():
        dist = {r: 0}
        parent = {r: None}
        queue = deque([r])
        while queue:
            x = queue.popleft()
            if dist[x] * 2 >= best:
                continue
            for w in g.neighbors(x):
                if w not in dist:
                    dist[w] = dist[x] + 1
                    parent[w] = x
                    queue.append(w)
                elif parent[x] != w and parent[w] != x:
                    # Non-tree edge: closed walk through r of this length
                    # contains a cycle; the min over all roots is exact.
                    best = min(best, dist[x] + dist[w] + 1)
    return best


def degeneracy_and_coloring(g: Graph) -> tuple[int, dict[Vertex, int]]:
    """Exact degeneracy via iterated min-degree removal plus the induced
    greedy coloring along the reverse elimination order.

    The coloring is proper and uses at most degeneracy + 1 colors.
    """
    if g.n == 0:
        return 0, {}
    deg = {v: g.degree(v) for v in g.vertices()}
    alive = set(g.vertices())
    order: list[Vertex] = []
    degeneracy = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], vkey(x)))
        degeneracy = max(degeneracy, deg[v])
        order.append(v)
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    coloring: dict[Vertex, int] = {}
    for v in reversed(order):
        used = {coloring[w] for w in g.neighbors(v) if w in coloring}
        c = 0
        while c in used:
            c += 1
        coloring[v] = c
    return degeneracy, coloring


# -- edge-list file format ----------------------------------------------------

# One `u v` pair per line; `#` starts a comment; ids are unsigned integers or
# quoted names.


def _format_id(v: Vertex) -> str:
    if isinstance(v, int) and v >= 0:
        return str(v)
    return '"%s"' % str(v).replace('"', '\\"')


def _parse_id(tok: str) -> Vertex:
    if tok.isdigit():
        return int(tok)
    return tok


def write_edges(g: Graph, fh) -> None:
    for v in g.vertices():
        if g.degree(v) == 0:
            fh.write(f"{_format_id(v)}\n")
    for u, v in g.edges():
        fh.write(f"{_format_id(u)} {_format_id(v)}\n")


def read_edges(fh) -> Graph:
    vertices: list[Vertex] = []
    edges: list[tuple[Vertex, Vertex]] = []
    for raw in fh:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = shlex.split(line)
        if len(toks) == 1:
            vertices.append(_parse_id(toks[0]))
        elif len(toks) == 2:
            edges.append((_parse_id(toks[0]), _parse_id(toks[1])))
        else:
            raise ValueError(f"bad edge-list line: {raw!r}")
    return Graph(vertices, edges)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return read_edges(fh)


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_edges(g, fh)

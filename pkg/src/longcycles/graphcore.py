"""Multigraph core: stable edge ids, subgraph views, reduction, traversal.

Edges carry dense integer ids that never change: every subgraph is a view
over the same endpoint table, so an edge means the same thing in the host,
in any view, and in any certificate.  Loops and parallel edges are allowed;
a loop contributes 2 to the degree of its endpoint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import GraphInputError

EdgeSet = frozenset  # alias used in signatures: frozenset[int] of edge ids


class MultiGraph:
    """Immutable undirected multigraph with stable edge ids.

    A graph is a view: it keeps a shared endpoint table (one entry per edge
    id ever allocated by the host) plus the sets of currently alive edges
    and vertices.  Deleting edges or vertices produces a new view; ids are
    never re-indexed.
    """

    __slots__ = ("n", "_ends", "_edges", "_verts", "_adj")

    def __init__(self, n, ends, edge_ids=None, vertex_ids=None):
        self.n = n
        self._ends = ends
        self._verts = frozenset(range(n)) if vertex_ids is None else frozenset(vertex_ids)
        if edge_ids is None:
            self._edges = frozenset(range(len(ends)))
        else:
            self._edges = frozenset(edge_ids)
        adj = {v: [] for v in self._verts}
        for e in sorted(self._edges):
            u, v = ends[e]
            if u not in self._verts or v not in self._verts:
                raise GraphInputError(f"edge {e} touches a vertex outside the view")
            adj[u].append((e, v))
            if v != u:
                adj[v].append((e, u))
            else:
                adj[u].append((e, u))  # loops count twice
        self._adj = {v: tuple(inc) for v, inc in adj.items()}

    @classmethod
    def from_edge_list(cls, n, pairs):
        """Build a host graph from (u, v) pairs; ids follow list order."""
        pairs = [tuple(p) for p in pairs]
        for i, (u, v) in enumerate(pairs):
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge {i} endpoint out of range: ({u}, {v})")
        return cls(n, tuple(pairs), None, None)

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self):
        return sorted(self._verts)

    def vertex_set(self):
        return self._verts

    def edge_ids(self):
        return sorted(self._edges)

    def edge_set(self):
        return self._edges

    def has_vertex(self, v) -> bool:
        return v in self._verts

    def has_edge(self, e) -> bool:
        return e in self._edges

    def endpoints(self, e):
        if e not in self._edges:
            raise GraphInputError(f"edge {e} is not in this view")
        return self._ends[e]

    def is_loop(self, e) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def other_end(self, e, v):
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise GraphInputError(f"vertex {v} is not an endpoint of edge {e}")

    def incident(self, v):
        """Incident (edge, other endpoint) pairs; a loop appears twice."""
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def min_degree(self) -> int:
        if not self._verts:
            return 0
        return min(len(inc) for inc in self._adj.values())

    # -- views ----------------------------------------------------------

    def delete_edges(self, edges) -> "MultiGraph":
        return MultiGraph(self.n, self._ends, self._edges - frozenset(edges), self._verts)

    def delete_vertices(self, verts) -> "MultiGraph":
        dead = frozenset(verts)
        keep = frozenset(
            e for e in self._edges
            if self._ends[e][0] not in dead and self._ends[e][1] not in dead
        )
        return MultiGraph(self.n, self._ends, keep, self._verts - dead)

    def keep_edges(self, edges, vertices=None) -> "MultiGraph":
        """View on an edge subset; defaults to the vertices those edges touch."""
        edges = frozenset(edges)
        if vertices is None:
            touched = set()
            for e in edges:
                u, v = self._ends[e]
                touched.add(u)
                touched.add(v)
            vertices = touched
        return MultiGraph(self.n, self._ends, edges, frozenset(vertices))

    def induced(self, vertices) -> "MultiGraph":
        keep = frozenset(vertices)
        edges = frozenset(
            e for e in self._edges
            if self._ends[e][0] in keep and self._ends[e][1] in keep
        )
        return MultiGraph(self.n, self._ends, edges, keep)


@dataclass(frozen=True)
class Path:
    """Open walk with no repeated vertex: verts v0..vL, edges e1..eL.

    The degenerate single-vertex path has one vertex and no edges.  A few
    internal producers (loop expansions) set verts[0] == verts[-1]; such
    closed paths never escape to public results.
    """

    verts: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self):
        return self.verts[0]

    @property
    def end(self):
        return self.verts[-1]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.verts)), tuple(reversed(self.edges)))

    def edge_set(self):
        return frozenset(self.edges)


@dataclass(frozen=True)
class Cycle:
    """Simple cycle: verts v0..v_{L-1}; edges[i] joins verts[i] to verts[(i+1) % L].

    A loop is the length-1 cycle (one vertex, one edge); a parallel pair is
    the length-2 cycle.
    """

    verts: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    def edge_set(self):
        return frozenset(self.edges)

    def vertex_set(self):
        return frozenset(self.verts)


def validate_path(g: MultiGraph, p: Path) -> Optional[str]:
    """None if p is a path of g, else a reason."""
    if len(p.verts) != len(p.edges) + 1:
        return "vertex/edge sequence lengths disagree"
    if len(set(p.verts)) != len(p.verts):
        return "repeated vertex"
    if len(set(p.edges)) != len(p.edges):
        return "repeated edge"
    for v in p.verts:
        if not g.has_vertex(v):
            return f"vertex {v} not in graph"
    for i, e in enumerate(p.edges):
        if not g.has_edge(e):
            return f"edge {e} not in graph"
        if {g.endpoints(e)[0], g.endpoints(e)[1]} != {p.verts[i], p.verts[i + 1]}:
            return f"edge {e} does not join consecutive vertices"
    return None


def validate_cycle(g: MultiGraph, c: Cycle) -> Optional[str]:
    """None if c is a simple cycle of g, else a reason."""
    L = len(c.edges)
    if L == 0:
        return "empty cycle"
    if len(c.verts) != L:
        return "vertex/edge sequence lengths disagree"
    if len(set(c.verts)) != L:
        return "repeated vertex"
    if len(set(c.edges)) != L:
        return "repeated edge"
    if L == 1:
        e = c.edges[0]
        if not g.has_edge(e):
            return f"edge {e} not in graph"
        u, v = g.endpoints(e)
        if u != v or u != c.verts[0]:
            return "single-edge cycle must be a loop at its vertex"
        return None
    for v in c.verts:
        if not g.has_vertex(v):
            return f"vertex {v} not in graph"
    for i, e in enumerate(c.edges):
        if not g.has_edge(e):
            return f"edge {e} not in graph"
        a, b = c.verts[i], c.verts[(i + 1) % L]
        u, v = g.endpoints(e)
        if {u, v} != {a, b}:
            return f"edge {e} does not join consecutive vertices"
    return None


def cycle_from_edge_set(g: MultiGraph, edges) -> Optional[Cycle]:
    """Trace the edge set into a Cycle if it forms exactly one simple cycle."""
    edges = sorted(edges)
    if not edges:
        return None
    deg = {}
    inc = {}
    for e in edges:
        u, v = g.endpoints(e)
        for x in (u, v):
            deg[x] = deg.get(x, 0) + 1
            inc.setdefault(x, []).append(e)
        if u == v:
            deg[u] += 1
    if any(d != 2 for d in deg.values()):
        return None
    if len(edges) == 1:
        u, v = g.endpoints(edges[0])
        if u != v:
            return None
        return Cycle((u,), (edges[0],))
    start = min(deg)
    verts = [start]
    edge_seq = []
    used = set()
    cur = start
    e = min(inc[start])
    while True:
        edge_seq.append(e)
        used.add(e)
        cur = g.other_end(e, cur)
        if cur == start:
            break
        verts.append(cur)
        nxt = [f for f in inc[cur] if f not in used]
        if len(nxt) != 1:
            return None
        e = nxt[0]
    if len(used) != len(edges):
        return None  # more than one cycle in the set
    c = Cycle(tuple(verts), tuple(edge_seq))
    if validate_cycle(g, c) is not None:
        return None
    return c


def concat_paths(a: Path, b: Path) -> Path:
    """Join two paths sharing exactly the junction vertex a.end == b.start."""
    if a.end != b.start:
        raise GraphInputError("paths do not share a junction vertex")
    return Path(a.verts + b.verts[1:], a.edges + b.edges)


# -- text format -------------------------------------------------------


def parse_graph(text) -> MultiGraph:
    """Parse the edge-list text format.

    First significant line is "n m"; the next m significant lines are
    "u v" with 0-indexed endpoints.  Lines starting with '#' and blank
    lines are skipped.  Duplicate "u v" lines are parallel edges; "u u"
    is a loop.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    pairs = []
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise GraphInputError(f"line {lineno}: expected 'n m', got {raw!r}")
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise GraphInputError(f"line {lineno}: expected integers in 'n m'")
            if n < 0 or m < 0:
                raise GraphInputError(f"line {lineno}: negative count in 'n m'")
            header = (n, m)
            continue
        if len(pairs) >= m:
            raise GraphInputError(f"line {lineno}: more than {m} edge lines")
        if len(fields) != 2:
            raise GraphInputError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphInputError(f"line {lineno}: expected integer endpoints")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: endpoint out of range 0..{n - 1}")
        pairs.append((u, v))
    if header is None:
        raise GraphInputError("empty input: missing 'n m' header")
    if len(pairs) != m:
        raise GraphInputError(f"expected {m} edges, found {len(pairs)}")
    return MultiGraph.from_edge_list(n, pairs)


def format_graph(g: MultiGraph, comments=()) -> str:
    """Emit the edge-list text format (host-complete views only).

    The view must be dense: all of 0..n-1 alive and edge ids 0..m-1 alive,
    which holds for freshly built graphs such as generator output.
    """
    ids = g.edge_ids()
    if g.vertices() != list(range(g.n)) or ids != list(range(len(ids))):
        raise GraphInputError("only dense host graphs can be formatted")
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    for e in ids:
        u, v = g.endpoints(e)
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


# -- traversal ---------------------------------------------------------


def bfs_distances(g: MultiGraph, source) -> dict:
    """Unweighted distances from source within the view."""
    dist = {source: 0}
    q = deque([source])
    while q:
        x = q.popleft()
        for e, y in g.incident(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def shortest_path_in(g: MultiGraph, source, target) -> Optional[Path]:
    """A shortest source-target path; ties resolved by smallest edge id."""
    if source == target:
        return Path((source,), ())
    parent = {source: None}
    q = deque([source])
    while q:
        x = q.popleft()
        for e, y in g.incident(x):
            if y not in parent:
                parent[y] = (x, e)
                if y == target:
                    q.clear()
                    break
                q.append(y)
    if target not in parent:
        return None
    verts = [target]
    edges = []
    cur = target
    while parent[cur] is not None:
        prev, e = parent[cur]
        edges.append(e)
        verts.append(prev)
        cur = prev
    return Path(tuple(reversed(verts)), tuple(reversed(edges)))


def components(g: MultiGraph):
    """Connected components as vertex sets, sorted by smallest vertex."""
    seen = set()
    out = []
    for v in g.vertices():
        if v in seen:
            continue
        comp = {v}
        q = deque([v])
        seen.add(v)
        while q:
            x = q.popleft()
            for e, y in g.incident(x):
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    q.append(y)
        out.append(frozenset(comp))
    return out


def blocks(g: MultiGraph):
    """Biconnected components as an edge partition, sorted by smallest id.

    Parallel edges share a block with their partners; a loop is a block of
    its own; a cut edge is a single-edge block.  Every cycle's edges land
    in exactly one block.
    """
    disc = {}
    low = {}
    out = []
    stack = []  # edge ids awaiting block assignment
    seen_edges = set()
    counter = 0
    for root in g.vertices():
        if root in disc:
            continue
        # iterative DFS: frames are (vertex, entry edge id, incident iterator)
        disc[root] = low[root] = counter
        counter += 1
        frames = [(root, None, iter(g.incident(root)))]
        while frames:
            x, entry, it = frames[-1]
            advanced = False
            for e, y in it:
                if e == entry or e in seen_edges:
                    continue
                if y == x:  # loop: its own block
                    seen_edges.add(e)
                    out.append(frozenset((e,)))
                    continue
                if y not in disc:
                    seen_edges.add(e)
                    stack.append(e)
                    disc[y] = low[y] = counter
                    counter += 1
                    frames.append((y, e, iter(g.incident(y))))
                    advanced = True
                    break
                # back edge to an ancestor (or a parallel of the entry edge)
                seen_edges.add(e)
                stack.append(e)
                if disc[y] < low[x]:
                    low[x] = disc[y]
            if advanced:
                continue
            frames.pop()
            if frames:
                px, _, _ = frames[-1]
                if low[x] < low[px]:
                    low[px] = low[x]
                if low[x] >= disc[px]:
                    blk = []
                    while stack:
                        blk.append(stack.pop())
                        if blk[-1] == entry:
                            break
                    out.append(frozenset(blk))
    out = [b for b in out if b]
    return sorted(out, key=min)


# -- reduction ---------------------------------------------------------


@dataclass(frozen=True)
class SuppressionMap:
    """Expansion table of a reduced multigraph: reduced edge id -> original Path.

    Expansion paths are internally disjoint from one another, so a cycle of
    the reduced graph always expands to a cycle of the original.  The entry
    for a reduced loop is a closed path (first vertex == last vertex).
    """

    expansions: tuple

    def expand(self, reduced_edge: int) -> Path:
        return self.expansions[reduced_edge]


def suppress_degree2(g: MultiGraph):
    """Iteratively delete degree-0/1 vertices and suppress degree-2 vertices.

    Returns (reduced, map): a fresh multigraph of minimum degree >= 3 over
    the same vertex id space, plus the expansion map.  A component that
    collapses to a bare loop is removed with its vertex, so a lone cycle
    reduces to the empty graph.
    """
    # recs[i] = (u, v, path) for live working edges; path runs u -> v.
    recs = []
    alive_rec = []
    adj = {v: set() for v in g.vertices()}
    for e in g.edge_ids():
        u, v = g.endpoints(e)
        idx = len(recs)
        recs.append((u, v, Path((u, v), (e,)) if u != v else Path((u, u), (e,))))
        alive_rec.append(True)
        adj[u].add(idx)
        if v != u:
            adj[v].add(idx)

    def deg(v):
        d = 0
        for i in adj[v]:
            a, b, _ = recs[i]
            d += 2 if a == b else 1
        return d

    alive_v = set(g.vertices())
    todo = set(alive_v)
    while todo:
        v = min(todo)
        todo.discard(v)
        if v not in alive_v:
            continue
        d = deg(v)
        if d > 2:
            continue
        if d == 0:
            alive_v.discard(v)
            continue
        if d == 1:
            i = min(adj[v])
            a, b, _ = recs[i]
            alive_rec[i] = False
            other = b if a == v else a
            adj[a].discard(i)
            adj[b].discard(i)
            alive_v.discard(v)
            todo.add(other)
            continue
        # degree 2: either one loop or two distinct non-loop edges
        ids = sorted(adj[v])
        if len(ids) == 1:
            i = ids[0]
            alive_rec[i] = False
            adj[v].discard(i)
            alive_v.discard(v)
            continue
        i, j = ids
        au, av, ap = recs[i]
        bu, bv, bp = recs[j]
        a = au if av == v else av
        b = bv if bu == v else bu
        first = ap if av == v else ap.reversed()   # runs a -> v
        second = bp if bu == v else bp.reversed()  # runs v -> b
        merged = concat_paths_allow_closed(first, second)
        alive_rec[i] = False
        alive_rec[j] = False
        idx = len(recs)
        recs.append((a, b, merged))
        alive_rec.append(True)
        adj[a].discard(i)
        adj[a].discard(j)
        adj[b].discard(i)
        adj[b].discard(j)
        adj[a].add(idx)
        if b != a:
            adj[b].add(idx)
        alive_v.discard(v)
        todo.add(a)
        todo.add(b)

    pairs = []
    expansions = []
    for i, rec in enumerate(recs):
        if alive_rec[i]:
            u, v, p = rec
            pairs.append((u, v))
            expansions.append(p)
    reduced = MultiGraph(g.n, tuple(pairs), None, frozenset(alive_v))
    return reduced, SuppressionMap(tuple(expansions))


def concat_paths_allow_closed(a: Path, b: Path) -> Path:
    # suppression-internal: the result may close into a loop expansion
    if a.end != b.start:
        raise GraphInputError("paths do not share a junction vertex")
    return Path(a.verts + b.verts[1:], a.edges + b.edges)


def expand_cycle(c: Cycle, smap: SuppressionMap, reduced: MultiGraph) -> Cycle:
    """Rewrite a cycle of the reduced graph as a cycle of the original."""
    if len(c.edges) == 1 and reduced.is_loop(c.edges[0]):
        p = smap.expand(c.edges[0])
        return Cycle(p.verts[:-1], p.edges)
    verts = []
    edges = []
    L = len(c.edges)
    for i, e in enumerate(c.edges):
        x, y = c.verts[i], c.verts[(i + 1) % L]
        p = smap.expand(e)
        if p.start == x and p.end == y:
            seg = p
        elif p.start == y and p.end == x:
            seg = p.reversed()
        else:
            raise GraphInputError(f"expansion of edge {e} does not match traversal")
        verts.extend(seg.verts[:-1])
        edges.extend(seg.edges)
    return Cycle(tuple(verts), tuple(edges))

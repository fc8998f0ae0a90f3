"""Edge-disjoint path systems, minimum edge cuts, and k-perfect separation.

Flows are unit-capacity and undirected; augmentation is breadth-first, so
every routine is exact and deterministic.  Cut edges always carry original
edge ids, even when vertex classes are virtually contracted.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Optional

from .errors import ClaimViolation, GraphInputError
from .graphcore import MultiGraph, Path, components


@dataclass(frozen=True)
class CutResult:
    """Outcome of a k-path request: k paths, or a smaller minimum cut."""

    k: int
    paths: Optional[tuple] = None
    cut: Optional[tuple] = None

    @property
    def has_paths(self) -> bool:
        return self.paths is not None


class _Flow:
    """Undirected unit-capacity flow over a (possibly contracted) graph.

    cmap maps each vertex to a node; edges whose endpoints share a node are
    skipped, so hops inside a contracted class are free.  Edge flow is +1
    along the stored endpoint orientation, -1 against it, 0 unused.
    """

    def __init__(self, g: MultiGraph, cmap=None):
        self.g = g
        self.cmap = cmap if cmap is not None else {v: v for v in g.vertices()}
        self.flow = {}
        self.adj = defaultdict(list)
        for e in g.edge_ids():
            u, v = g.endpoints(e)
            nu, nv = self.cmap[u], self.cmap[v]
            if nu == nv:
                continue
            self.flow[e] = 0
            self.adj[nu].append((e, nu, nv))
            self.adj[nv].append((e, nu, nv))

    def _augment(self, s, t) -> bool:
        parent = {s: None}
        q = deque([s])
        while q:
            x = q.popleft()
            if x == t:
                break
            for e, nu, nv in self.adj[x]:
                y = nv if x == nu else nu
                if y in parent:
                    continue
                f = self.flow[e]
                if (x == nu and f > 0) or (x == nv and f < 0):
                    continue  # saturated in this direction
                parent[y] = (x, e)
                q.append(y)
        if t not in parent:
            return False
        y = t
        while parent[y] is not None:
            x, e = parent[y]
            nu, _ = self.adj[x][0][1], None
            u, v = self.g.endpoints(e)
            if self.cmap[u] == x:
                self.flow[e] += 1
            else:
                self.flow[e] -= 1
            y = x
        return True

    def max_flow(self, s, t, limit: int) -> int:
        value = 0
        while value < limit and self._augment(s, t):
            value += 1
        return value

    def min_cut(self, s):
        """Residual-reachable side from s; returns (node set, crossing edges)."""
        reach = {s}
        q = deque([s])
        while q:
            x = q.popleft()
            for e, nu, nv in self.adj[x]:
                y = nv if x == nu else nu
                if y in reach:
                    continue
                f = self.flow[e]
                if (x == nu and f > 0) or (x == nv and f < 0):
                    continue
                reach.add(y)
                q.append(y)
        cut = []
        for e in sorted(self.flow):
            u, v = self.g.endpoints(e)
            if (self.cmap[u] in reach) != (self.cmap[v] in reach):
                cut.append(e)
        return reach, cut


def _decompose_paths(g: MultiGraph, flow, s, t, count):
    # peel `count` simple s-t paths off an integral flow, cancelling any
    # flow cycles encountered along the way
    out = defaultdict(list)
    for e in sorted(flow):
        f = flow[e]
        if f == 0:
            continue
        u, v = g.endpoints(e)
        if f == 1:
            out[u].append((e, v))
        else:
            out[v].append((e, u))
    paths = []
    for _ in range(count):
        verts = [s]
        edges = []
        pos = {s: 0}
        cur = s
        while cur != t:
            if not out[cur]:
                raise ClaimViolation("flow-decomposition", f"stuck at vertex {cur}")
            e, y = out[cur].pop(0)
            if y in pos:
                j = pos[y]
                for w in verts[j + 1:]:
                    del pos[w]
                del verts[j + 1:]
                del edges[j:]
            else:
                pos[y] = len(verts)
                verts.append(y)
                edges.append(e)
            cur = y
        paths.append(Path(tuple(verts), tuple(edges)))
    return paths


def edge_disjoint_paths(g: MultiGraph, s: int, t: int, k: int) -> CutResult:
    """k pairwise edge-disjoint s-t paths, or a minimum s-t cut of size < k."""
    if k < 1:
        raise GraphInputError("k must be at least 1")
    if not g.has_vertex(s) or not g.has_vertex(t):
        raise GraphInputError("flow endpoints must be vertices of the graph")
    if s == t:
        raise GraphInputError("flow endpoints must be distinct")
    net = _Flow(g)
    value = net.max_flow(s, t, k)
    if value >= k:
        return CutResult(k, paths=tuple(_decompose_paths(g, net.flow, s, t, k)))
    _, cut = net.min_cut(s)
    if len(cut) != value:
        raise ClaimViolation(
            "flow-cut-duality", f"flow value {value} but cut size {len(cut)}"
        )
    return CutResult(k, cut=tuple(cut))


def sim_k(g: MultiGraph, u: int, v: int, k: int) -> bool:
    """Whether u = v or k edge-disjoint u-v paths exist."""
    if not g.has_vertex(u) or not g.has_vertex(v):
        raise GraphInputError("vertices must belong to the graph")
    if u == v:
        return True
    if k < 1:
        raise GraphInputError("k must be at least 1")
    net = _Flow(g)
    return net.max_flow(u, v, k) >= k


def _check_class_sets(g, sets):
    seen = set()
    for a in sets:
        if not a:
            raise GraphInputError("class sets must be nonempty")
        for v in a:
            if not g.has_vertex(v):
                raise GraphInputError(f"class vertex {v} not in the graph")
            if v in seen:
                raise GraphInputError("class sets must be pairwise disjoint")
            seen.add(v)


def separate_class_sets(g: MultiGraph, sets, k: int):
    """Edges whose removal leaves no path between any two of the sets.

    The sets must lie in p distinct k-edge-connectivity classes; the result
    has at most (p-1)(k-1) edges.  Each set is treated as a single
    contracted node throughout, so internal hops are free.
    """
    if k < 1:
        raise GraphInputError("k must be at least 1")
    sets = [frozenset(a) for a in sets]
    _check_class_sets(g, sets)
    out = sorted(_separate_rec(g, sets, k))
    p = len(sets)
    if len(out) > (p - 1) * (k - 1):
        raise ClaimViolation(
            "class-separation-bound",
            f"{len(out)} edges exceed ({p}-1)({k}-1)",
        )
    return out


def _separate_rec(g, sets, k):
    p = len(sets)
    if p <= 1:
        return set()
    cmap = {v: v for v in g.vertices()}
    anchor = {}
    for i, a in enumerate(sets):
        node = ("cls", min(a))
        anchor[i] = node
        for v in a:
            cmap[v] = node
    net = _Flow(g, cmap)
    value = net.max_flow(anchor[0], anchor[1], k)
    if value >= k:
        raise GraphInputError(
            "two of the class sets are joined by k edge-disjoint paths"
        )
    _, cut = net.min_cut(anchor[0])
    if len(cut) != value:
        raise ClaimViolation(
            "flow-cut-duality", f"flow value {value} but cut size {len(cut)}"
        )
    cut = set(cut)
    # components of the contracted graph minus the cut
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry, key=repr)] = min(rx, ry, key=repr)

    for e in g.edge_ids():
        if e in cut:
            continue
        u, v = g.endpoints(e)
        if cmap[u] != cmap[v]:
            union(cmap[u], cmap[v])
    if find(anchor[0]) == find(anchor[1]):
        raise ClaimViolation("class-cut-incomplete", "cut fails to split the anchors")
    rest = g.delete_edges(cut)
    groups = defaultdict(list)
    for i, a in enumerate(sets):
        groups[find(anchor[i])].append(i)
    out = set(cut)
    for root in sorted(groups, key=repr):
        idxs = groups[root]
        if len(idxs) >= p:
            raise ClaimViolation(
                "class-separation-progress", "cut did not split the class sets"
            )
        if len(idxs) <= 1:
            continue
        verts = frozenset(v for v in g.vertices() if find(cmap[v]) == root)
        sub = rest.induced(verts)
        out |= _separate_rec(sub, [sets[i] for i in idxs], k)
    return out


def k_perfect_separation(g: MultiGraph, vertices, k: int):
    """Edges X such that same-component target pairs in G-X are k-joined.

    After deleting the result, any two of the target vertices that still
    share a component admit k edge-disjoint paths between them.  At most
    (|A|-1)(k-1) edges are returned.
    """
    if k < 1:
        raise GraphInputError("k must be at least 1")
    targets = sorted(set(vertices))
    for v in targets:
        if not g.has_vertex(v):
            raise GraphInputError(f"target vertex {v} not in the graph")
    out = sorted(_perfect_rec(g, targets, k))
    if len(out) > max(0, (len(targets) - 1)) * (k - 1):
        raise ClaimViolation(
            "perfect-separation-bound",
            f"{len(out)} edges exceed ({len(targets)}-1)({k}-1)",
        )
    return out


def _perfect_rec(g, targets, k):
    if len(targets) <= 1:
        return set()
    classes = []
    for a in targets:
        for cls in classes:
            if sim_k(g, cls[0], a, k):
                cls.append(a)
                break
        else:
            classes.append([a])
    if len(classes) == 1:
        return set()
    x_split = set(_separate_rec(g, [frozenset(c) for c in classes], k))
    rest = g.delete_edges(x_split)
    comps = components(rest)
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    out = set(x_split)
    claimed = {}
    for cls in classes:
        idxs = sorted({comp_of[a] for a in cls})
        for i in idxs:
            if claimed.setdefault(i, cls[0]) != cls[0]:
                raise ClaimViolation(
                    "class-cut-incomplete",
                    "two separated classes share a component",
                )
        verts = frozenset().union(*(comps[i] for i in idxs))
        sub = rest.induced(verts)
        out |= _perfect_rec(sub, cls, k)
    return out

"""Cycle detection and packing at desk scale.

The detector is exact: it either returns a cycle, proves absence, or raises
BudgetExceeded.  It never reports "absent" because a search was cut short.
The oracles are exhaustive reference implementations meant for small edge
counts; everything here is deterministic for a fixed input.
"""

from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import BudgetExceeded, ClaimViolation, GraphInputError
from .graphcore import Cycle, MultiGraph, expand_cycle, suppress_degree2, validate_cycle

ANY_LONG = "any_long"
SHORTEST_LONG = "shortest_long"
THROUGH_EDGE = "through_edge"
LENGTH_AT_MOST = "length_at_most"


@dataclass(frozen=True)
class DetectorBudget:
    """Limits for exhaustive searches; zero means unlimited."""

    max_nodes: int = 0
    time_limit_ms: int = 0


UNLIMITED = DetectorBudget()


class BudgetMeter:
    """Counts search-node expansions against a budget."""

    def __init__(self, budget: DetectorBudget = UNLIMITED):
        self.budget = budget
        self.nodes = 0
        self._deadline = None
        if budget.time_limit_ms:
            self._deadline = time.monotonic() + budget.time_limit_ms / 1000.0

    def tick(self):
        self.nodes += 1
        if self.budget.max_nodes and self.nodes > self.budget.max_nodes:
            raise BudgetExceeded(self.nodes)
        if self._deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self._deadline:
                raise BudgetExceeded(self.nodes, "time limit reached")


@dataclass(frozen=True)
class LongCycleQuery:
    """What to look for: a mode plus its parameters.

    Modes: any_long (any cycle of length >= ell), shortest_long (minimum
    length among those >= ell), through_edge (long cycle through a given
    edge), length_at_most (long cycle of length <= bound).
    """

    ell: int
    mode: str = ANY_LONG
    edge: Optional[int] = None
    bound: Optional[int] = None

    @staticmethod
    def any_long(ell: int) -> "LongCycleQuery":
        return LongCycleQuery(ell, ANY_LONG)

    @staticmethod
    def shortest_long(ell: int) -> "LongCycleQuery":
        return LongCycleQuery(ell, SHORTEST_LONG)

    @staticmethod
    def through_edge(ell: int, edge: int) -> "LongCycleQuery":
        return LongCycleQuery(ell, THROUGH_EDGE, edge=edge)

    @staticmethod
    def length_at_most(ell: int, bound: int) -> "LongCycleQuery":
        return LongCycleQuery(ell, LENGTH_AT_MOST, bound=bound)


class _CycleSearch:
    """Depth-first simple-path search anchored at one edge.

    Cycles through the anchor are exactly the simple paths between its
    endpoints that avoid it.  With min_id set to the anchor id, only edges
    with larger ids may extend the path, so every cycle of the graph is
    produced exactly once, anchored at its smallest edge id.
    """

    def __init__(self, g: MultiGraph, lo: int, hi, meter: BudgetMeter):
        self.g = g
        self.lo = lo
        self.hi = hi
        self.meter = meter
        self.anchor = -1
        self.min_id = -1
        self.target = -1

    def _in_range(self, length: int) -> bool:
        return length >= self.lo and (self.hi is None or length <= self.hi)

    def anchor_cycles(self, anchor: int, min_id: int) -> Iterator[Cycle]:
        a, b = self.g.endpoints(anchor)
        self.anchor = anchor
        self.min_id = min_id
        if a == b:
            self.meter.tick()
            if self._in_range(1):
                yield Cycle((a,), (anchor,))
            return
        self.target = a
        visited = {a, b}
        yield from self._extend(b, [b], [], visited)

    def _reach(self, cur, visited):
        # distances from cur through unvisited vertices; target is terminal
        dist = {cur: 0}
        q = deque([cur])
        while q:
            x = q.popleft()
            for e, y in self.g.incident(x):
                if e == self.anchor or e <= self.min_id:
                    continue
                if y in dist:
                    continue
                if y in visited and y != self.target:
                    continue
                dist[y] = dist[x] + 1
                if y != self.target:
                    q.append(y)
        return dist

    def _extend(self, cur, pverts, pedges, visited) -> Iterator[Cycle]:
        self.meter.tick()
        dist = self._reach(cur, visited)
        if self.target not in dist:
            return
        if self.hi is not None and len(pedges) + dist[self.target] + 1 > self.hi:
            return
        avail = sum(1 for v in dist if v not in visited and v != self.target)
        if len(pedges) + avail + 2 < self.lo:
            return
        for e, y in self.g.incident(cur):
            if e == self.anchor or e <= self.min_id:
                continue
            if y == self.target:
                length = len(pedges) + 2
                if self._in_range(length):
                    yield Cycle(
                        (self.target,) + tuple(pverts),
                        (self.anchor,) + tuple(pedges) + (e,),
                    )
                continue
            if y in visited:
                continue
            visited.add(y)
            pverts.append(y)
            pedges.append(e)
            yield from self._extend(y, pverts, pedges, visited)
            visited.discard(y)
            pverts.pop()
            pedges.pop()


def find_long_cycle(g: MultiGraph, query: LongCycleQuery, budget: DetectorBudget = UNLIMITED) -> Optional[Cycle]:
    """Exact long-cycle detection; None means provably absent."""
    if query.ell < 1:
        raise GraphInputError("cycle-length threshold must be at least 1")
    meter = budget if isinstance(budget, BudgetMeter) else BudgetMeter(budget)
    if query.mode == THROUGH_EDGE:
        if query.edge is None or not g.has_edge(query.edge):
            raise GraphInputError("through_edge query needs an edge of the graph")
        search = _CycleSearch(g, query.ell, query.bound, meter)
        return next(search.anchor_cycles(query.edge, -1), None)
    if query.mode == LENGTH_AT_MOST:
        if query.bound is None or query.bound < query.ell:
            raise GraphInputError("length_at_most bound must be >= ell")
        for anchor in g.edge_ids():
            search = _CycleSearch(g, query.ell, query.bound, meter)
            found = next(search.anchor_cycles(anchor, anchor), None)
            if found is not None:
                return found
        return None
    if query.mode == ANY_LONG:
        for anchor in g.edge_ids():
            search = _CycleSearch(g, query.ell, None, meter)
            found = next(search.anchor_cycles(anchor, anchor), None)
            if found is not None:
                return found
        return None
    if query.mode == SHORTEST_LONG:
        best = None
        for anchor in g.edge_ids():
            hi = None if best is None else best.length - 1
            if hi is not None and hi < query.ell:
                break
            search = _CycleSearch(g, query.ell, hi, meter)
            for c in search.anchor_cycles(anchor, anchor):
                if best is None or c.length < best.length:
                    best = c
                    search.hi = c.length - 1
                    if best.length == query.ell:
                        return best
        return best
    raise GraphInputError(f"unknown query mode {query.mode!r}")


def edge_on_long_cycle(g: MultiGraph, e: int, ell: int, budget: DetectorBudget = UNLIMITED) -> bool:
    """Whether some cycle of length >= ell passes through edge e."""
    return find_long_cycle(g, LongCycleQuery.through_edge(ell, e), budget) is not None


def shortest_cycle(g: MultiGraph) -> Optional[Cycle]:
    """A minimum-length cycle: loops count as length 1, parallel pairs as 2."""
    for e in g.edge_ids():
        u, v = g.endpoints(e)
        if u == v:
            return Cycle((u,), (e,))
    by_pair = {}
    for e in g.edge_ids():
        u, v = g.endpoints(e)
        key = (u, v) if u <= v else (v, u)
        if key in by_pair:
            f = by_pair[key]
            return Cycle(key, (f, e))
        by_pair[key] = e
    best = None
    non_loops = g.edge_ids()
    for root in g.vertices():
        if best is not None and best.length == 3:
            break
        dist = {root: 0}
        parent = {root: (None, None)}
        q = deque([root])
        while q:
            x = q.popleft()
            for e, y in g.incident(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = (x, e)
                    q.append(y)
        for e in non_loops:
            x, y = g.endpoints(e)
            if x not in dist or y not in dist:
                continue
            if parent[x][1] == e or parent[y][1] == e:
                continue
            cand = dist[x] + dist[y] + 1
            if best is not None and cand >= best.length:
                continue
            ex = _root_path_edges(parent, x)
            ey = _root_path_edges(parent, y)
            vx = _root_path_verts(parent, x)
            vy = _root_path_verts(parent, y)
            if set(vx) & set(vy) != {root}:
                continue  # walk is not a simple cycle; a better root will do
            c = cycle_from_edges_ordered(g, ex, e, ey)
            if c is not None and (best is None or c.length < best.length):
                best = c
    return best


def _root_path_edges(parent, v):
    out = []
    while parent[v][0] is not None:
        out.append(parent[v][1])
        v = parent[v][0]
    return out


def _root_path_verts(parent, v):
    out = [v]
    while parent[v][0] is not None:
        v = parent[v][0]
        out.append(v)
    return out


def cycle_from_edges_ordered(g, edges_down, bridge_edge, edges_up):
    from .graphcore import cycle_from_edge_set

    all_edges = set(edges_down) | {bridge_edge} | set(edges_up)
    if len(all_edges) != len(edges_down) + len(edges_up) + 1:
        return None
    return cycle_from_edge_set(g, all_edges)


def enumerate_cycles(g: MultiGraph, meter: Optional[BudgetMeter] = None, max_length=None) -> Iterator[Cycle]:
    """Every simple cycle of g exactly once, in a deterministic order.

    Each cycle appears anchored at its smallest edge id.  Intended for
    desk-scale graphs; pass a meter to bound the work.
    """
    meter = meter or BudgetMeter()
    for anchor in g.edge_ids():
        search = _CycleSearch(g, 1, max_length, meter)
        yield from search.anchor_cycles(anchor, anchor)


def pack_cycles_dense(g: MultiGraph, k: int):
    """k edge-disjoint cycles from a dense minimum-degree-3 multigraph.

    Recursion: take a shortest cycle, delete its edges, reduce degrees
    below 3 away, recurse, and expand the reduced cycles back.  With
    |E| >= 42 k log2 k the recursion is guaranteed to succeed; on sparser
    inputs it is attempted and failure is reported as an input error.
    """
    if k < 1:
        raise GraphInputError("k must be at least 1")
    if k == 1:
        c = shortest_cycle(g)
        if c is None:
            raise GraphInputError("graph has no cycle")
        return [c]
    if g.m == 0 or g.min_degree() < 3:
        raise GraphInputError("packing recursion needs minimum degree 3")
    guaranteed = g.m >= math.ceil(42 * k * math.log2(k))
    c = shortest_cycle(g)
    if c is None:
        raise ClaimViolation("dense-pack-cycle", "no cycle despite minimum degree 3")
    rest = g.delete_edges(c.edge_set())
    reduced, smap = suppress_degree2(rest)
    if reduced.m == 0:
        if guaranteed:
            raise ClaimViolation(
                "dense-pack-residual",
                f"residual graph vanished with {k - 1} cycles still to find",
            )
        raise GraphInputError(f"graph too sparse to pack {k} cycles")
    sub = pack_cycles_dense(reduced, k - 1)
    out = [c]
    for s in sub:
        expanded = expand_cycle(s, smap, reduced)
        reason = validate_cycle(g, expanded)
        if reason is not None:
            raise ClaimViolation("dense-pack-expansion", reason)
        out.append(expanded)
    return out


def oracle_max_packing(g: MultiGraph, ell: int, meter: Optional[BudgetMeter] = None):
    """Exhaustive maximum packing of edge-disjoint cycles of length >= ell.

    Returns (optimum, witness cycles).  Exponential; desk scale only.
    """
    if ell < 1:
        raise GraphInputError("ell must be at least 1")
    meter = meter or BudgetMeter()
    cycles = [c for c in enumerate_cycles(g, meter) if c.length >= ell]
    sets = [c.edge_set() for c in cycles]
    best = []

    def bound_ok(i, chosen, used_count):
        remaining_edges = g.m - used_count
        cap = min(len(cycles) - i, remaining_edges // ell)
        return len(chosen) + cap > len(best)

    def dfs(i, used, chosen):
        nonlocal best
        meter.tick()
        if len(chosen) > len(best):
            best = list(chosen)
        for j in range(i, len(cycles)):
            if not bound_ok(j, chosen, len(used)):
                return
            if sets[j] & used:
                continue
            chosen.append(cycles[j])
            dfs(j + 1, used | sets[j], chosen)
            chosen.pop()

    dfs(0, frozenset(), [])
    return len(best), best


def oracle_min_hitting(g: MultiGraph, ell: int, meter: Optional[BudgetMeter] = None):
    """Exhaustive minimum edge set meeting every cycle of length >= ell.

    Returns (optimum, sorted edge ids).  Exponential; desk scale only.
    """
    if ell < 1:
        raise GraphInputError("ell must be at least 1")
    meter = meter or BudgetMeter()
    sets = [c.edge_set() for c in enumerate_cycles(g, meter) if c.length >= ell]
    if not sets:
        return 0, []
    best: Optional[frozenset] = None

    def disjoint_lb(uncovered):
        used = set()
        count = 0
        for s in uncovered:
            if not (s & used):
                used |= s
                count += 1
        return count

    def bnb(uncovered, chosen):
        nonlocal best
        meter.tick()
        if not uncovered:
            if best is None or len(chosen) < len(best):
                best = frozenset(chosen)
            return
        if best is not None and len(chosen) + disjoint_lb(uncovered) >= len(best):
            return
        target = min(uncovered, key=lambda s: (len(s), sorted(s)))
        for e in sorted(target):
            chosen.append(e)
            bnb([s for s in uncovered if e not in s], chosen)
            chosen.pop()

    bnb(sets, [])
    return len(best), sorted(best)

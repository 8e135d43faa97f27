"""Property checkers over a validated drawing.

The planarly-connected checks ask, for every crossing pair, whether a
crossing-free edge (or short crossing-free path) joins their endpoint sets.
The family searches look for pairwise-crossing edge sets and for grids in
the crossing graph.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from . import search
from .drawing import CrossingSet, Drawing, compute_crossings, partition_edges
from .errors import SearchCapError

PAIRWISE_CROSSING_CAP = 12
GRID_CAP = 8
DEFAULT_GRID_BUDGET = 10_000_000


class PccReason(enum.Enum):
    ADJACENT_CROSSING = "AdjacentCrossing"
    NOT_PLANARLY_CONNECTED = "NotPlanarlyConnected"


@dataclass(frozen=True)
class PccViolation:
    pair: Tuple[int, int]
    reason: PccReason


@dataclass
class PccReport:
    holds: bool
    violations: List[PccViolation]


@dataclass(frozen=True)
class CrossingFamilyWitness:
    edges: FrozenSet[int]


@dataclass(frozen=True)
class GridWitness:
    rows: FrozenSet[int]
    cols: FrozenSet[int]


class GridOutcome(enum.Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class GridSearchResult:
    outcome: GridOutcome
    witness: Optional[GridWitness]
    nodes_used: int


def check_pcc(d: Drawing, require_independent: bool = False) -> PccReport:
    """Is every (independent) crossing pair joined by a crossing-free edge?

    With ``require_independent`` set, crossing pairs that share a vertex are
    violations in their own right; otherwise they are exempt.
    """
    crossings = compute_crossings(d)
    part = partition_edges(d, crossings)
    planar_pairs = {
        frozenset((e.source, e.target)) for e in d.edges if e.id in part.planar
    }
    violations: List[PccViolation] = []
    for pair in crossings.sorted_pairs():
        e1 = d.edge(pair[0])
        e2 = d.edge(pair[1])
        if e1.endpoints() & e2.endpoints():
            if require_independent:
                violations.append(PccViolation(pair, PccReason.ADJACENT_CROSSING))
            continue
        if _connected_by_planar_edge(e1, e2, planar_pairs):
            continue
        violations.append(PccViolation(pair, PccReason.NOT_PLANARLY_CONNECTED))
    return PccReport(holds=not violations, violations=violations)


def _connected_by_planar_edge(e1, e2, planar_pairs) -> bool:
    for u in e1.endpoints():
        for v in e2.endpoints():
            if frozenset((u, v)) in planar_pairs:
                return True
    return False


def check_k_pcc(d: Drawing, k: int) -> PccReport:
    """Like check_pcc, but the connection may be a path of <= k
    crossing-free edges (k = 0 demands a shared vertex).

    k = 1 agrees exactly with check_pcc without the independence requirement.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    crossings = compute_crossings(d)
    part = partition_edges(d, crossings)
    adj: Dict[int, List[int]] = {v.id: [] for v in d.vertices}
    for e in d.edges:
        if e.id in part.planar:
            adj[e.source].append(e.target)
            adj[e.target].append(e.source)

    dist_cache: Dict[int, Dict[int, int]] = {}

    def bfs(src: int) -> Dict[int, int]:
        got = dist_cache.get(src)
        if got is None:
            got = {src: 0}
            q = deque([src])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if w not in got:
                        got[w] = got[u] + 1
                        q.append(w)
            dist_cache[src] = got
        return got

    violations: List[PccViolation] = []
    for pair in crossings.sorted_pairs():
        e1 = d.edge(pair[0])
        e2 = d.edge(pair[1])
        best = None
        for u in sorted(e1.endpoints()):
            dist = bfs(u)
            for v in e2.endpoints():
                duv = dist.get(v)
                if duv is not None and (best is None or duv < best):
                    best = duv
        if best is None or best > k:
            violations.append(PccViolation(pair, PccReason.NOT_PLANARLY_CONNECTED))
    return PccReport(holds=not violations, violations=violations)


def crossing_graph(d: Drawing, crossings: Optional[CrossingSet] = None) -> Dict[int, Set[int]]:
    """Adjacency over edge ids: neighbors are the edges crossed."""
    if crossings is None:
        crossings = compute_crossings(d)
    neighbors: Dict[int, Set[int]] = {e.id: set() for e in d.edges}
    for a, b in crossings.pairs:
        neighbors[a].add(b)
        neighbors[b].add(a)
    return neighbors


def find_pairwise_crossing(d: Drawing, k: int) -> Optional[CrossingFamilyWitness]:
    """A family of k pairwise crossing edges, or None if none exists."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > PAIRWISE_CROSSING_CAP:
        raise SearchCapError(f"k = {k} exceeds the search cap {PAIRWISE_CROSSING_CAP}")
    neighbors = crossing_graph(d)
    got = search.find_clique(neighbors, k)
    if got is None:
        return None
    return CrossingFamilyWitness(edges=frozenset(got))


def find_grid(
    d: Drawing, k: int, budget: int = DEFAULT_GRID_BUDGET
) -> GridSearchResult:
    """Search for a k-grid with all 4k endpoint vertices distinct.

    Budget counts branch-and-bound node expansions; running out is reported
    as BUDGET_EXHAUSTED and never conflated with NOT_FOUND.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > GRID_CAP:
        raise SearchCapError(f"k = {k} exceeds the search cap {GRID_CAP}")
    crossings = compute_crossings(d)
    neighbors = crossing_graph(d, crossings)
    endpoints = {e.id: e.endpoints() for e in d.edges}
    try:
        witness, nodes = search.find_vertex_disjoint_biclique(endpoints, neighbors, k, budget)
    except search.BudgetExhausted as exc:
        return GridSearchResult(GridOutcome.BUDGET_EXHAUSTED, None, exc.args[0])
    if witness is None:
        return GridSearchResult(GridOutcome.NOT_FOUND, None, nodes)
    rows, cols = witness
    return GridSearchResult(
        GridOutcome.FOUND, GridWitness(frozenset(rows), frozenset(cols)), nodes
    )

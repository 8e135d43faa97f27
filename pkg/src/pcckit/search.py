"""Deterministic branch-and-bound searches on crossing graphs.

Nodes are edge ids of a drawing; adjacency means "these two edges cross".
Candidate lists are always processed in increasing id order so every witness
is reproducible.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple


def find_clique(
    neighbors: Dict[int, Set[int]], k: int
) -> Optional[Tuple[int, ...]]:
    """First k-clique in deterministic candidate order, or None.

    Nodes of degree < k-1 can never participate, so a k-core peel runs first.
    """
    if k <= 0:
        return ()
    if k == 1:
        nodes = sorted(neighbors)
        return (nodes[0],) if nodes else None

    alive = {v: set(ns) for v, ns in neighbors.items()}
    queue = [v for v, ns in alive.items() if len(ns) < k - 1]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        for u in alive.pop(v):
            if u in alive:
                alive[u].discard(v)
                if len(alive[u]) < k - 1:
                    queue.append(u)
    if len(alive) < k:
        return None

    order = sorted(alive)

    def extend(clique: List[int], cand: Sequence[int]) -> Optional[Tuple[int, ...]]:
        if len(clique) == k:
            return tuple(clique)
        if len(clique) + len(cand) < k:
            return None
        for idx, v in enumerate(cand):
            if len(clique) + (len(cand) - idx) < k:
                return None
            clique.append(v)
            nxt = [u for u in cand[idx + 1 :] if u in alive[v]]
            got = extend(clique, nxt)
            if got is not None:
                return got
            clique.pop()
        return None

    return extend([], order)


def max_clique_size(
    neighbors: Dict[int, Set[int]], cap: int
) -> Tuple[int, Tuple[int, ...]]:
    """Largest clique size up to ``cap`` plus one witness of that size."""
    best: Tuple[int, ...] = ()
    for k in range(1, cap + 1):
        got = find_clique(neighbors, k)
        if got is None:
            break
        best = got
    return len(best), best


class BudgetExhausted(Exception):
    pass


def find_vertex_disjoint_biclique(
    endpoints: Dict[int, FrozenSet[int]],
    neighbors: Dict[int, Set[int]],
    k: int,
    budget: int,
) -> Tuple[Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]], int]:
    """Search for edge sets (A, B), |A| = |B| = k, every A edge crossing
    every B edge, all 4k endpoints distinct.

    Returns (witness or None, nodes expanded).  Raises BudgetExhausted when
    the expansion budget runs out, with the count so far on the exception.
    """
    nodes_used = 0
    all_edges = sorted(endpoints)

    def disjoint_bound(cand: Sequence[int]) -> int:
        verts = set()
        for e in cand:
            verts.update(endpoints[e])
        return min(len(cand), len(verts) // 2)

    def extend(
        side_a: List[int],
        side_b: List[int],
        cand_a: Sequence[int],
        cand_b: Sequence[int],
        used: Set[int],
    ):
        nonlocal nodes_used
        nodes_used += 1
        if nodes_used > budget:
            raise BudgetExhausted(nodes_used)
        if len(side_a) == k and len(side_b) == k:
            return tuple(side_a), tuple(side_b)
        if len(side_a) + disjoint_bound(cand_a) < k:
            return None
        if len(side_b) + disjoint_bound(cand_b) < k:
            return None
        # Grow the smaller side; ties go to A.
        grow_a = (len(side_a) <= len(side_b) and len(side_a) < k) or len(side_b) == k
        cand = cand_a if grow_a else cand_b
        for idx, e in enumerate(cand):
            rest = cand[idx + 1 :]
            eps = endpoints[e]
            if eps & used:
                continue
            if grow_a:
                side_a.append(e)
                new_b = [f for f in cand_b if f in neighbors[e] and not (endpoints[f] & eps)]
                got = extend(side_a, side_b, rest, new_b, used | eps)
                side_a.pop()
            else:
                side_b.append(e)
                new_a = [f for f in cand_a if f in neighbors[e] and not (endpoints[f] & eps)]
                got = extend(side_a, side_b, new_a, rest, used | eps)
                side_b.pop()
            if got is not None:
                return got
        return None

    # Canonical form: the globally smallest edge of the grid sits in A, so
    # the root only branches on A's first element.
    for idx, e in enumerate(all_edges):
        nodes_used += 1
        if nodes_used > budget:
            raise BudgetExhausted(nodes_used)
        cand_b = sorted(f for f in neighbors.get(e, ()) if not (endpoints[f] & endpoints[e]))
        if len(cand_b) < k:
            continue
        rest_a = [f for f in all_edges[idx + 1 :]]
        got = extend([e], [], rest_a, cand_b, set(endpoints[e]))
        if got is not None:
            return got, nodes_used
    return None, nodes_used

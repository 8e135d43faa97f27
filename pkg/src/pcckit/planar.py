"""Plane-skeleton machinery: components of the crossing-free subgraph,
rotation systems and face walks, anchoring of crossed edges to face corners,
convex traces with their chord-interleaving rule, abstract planarity testing,
and planar four-coloring.

Rotation systems come from the exact initial tangent direction of each
polyline at each vertex; validation guarantees those directions are pairwise
distinct, so face tracing never meets a tie.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx

from .drawing import Drawing, EdgePartition
from .errors import AssignmentImpossibleError, FourColorSearchError

# ---------------------------------------------------------------------------
# Decomposition into skeleton components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    id: int
    vertices: FrozenSet[int]
    planar_edges: FrozenSet[int]


@dataclass
class Decomposition:
    components: List[Component]
    comp_of: Dict[int, int]
    intra: Dict[int, FrozenSet[int]]
    inter: Dict[Tuple[int, int], FrozenSet[int]]
    boundary_vertices: Dict[Tuple[int, int], FrozenSet[int]]

    def component(self, cid: int) -> Component:
        return self.components[cid]


def decompose(d: Drawing, partition: EdgePartition) -> Decomposition:
    """Connected components of the plane skeleton, plus how the crossed
    edges distribute within and across them."""
    parent: Dict[int, int] = {v.id: v.id for v in d.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        if e.id in partition.planar:
            ra, rb = find(e.source), find(e.target)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: Dict[int, List[int]] = {}
    for v in d.vertices:
        groups.setdefault(find(v.id), []).append(v.id)

    components: List[Component] = []
    comp_of: Dict[int, int] = {}
    for cid, root in enumerate(sorted(groups)):
        members = frozenset(groups[root])
        for v in members:
            comp_of[v] = cid
        components.append(Component(cid, members, frozenset()))
    planar_by_comp: Dict[int, Set[int]] = {c.id: set() for c in components}
    for e in d.edges:
        if e.id in partition.planar:
            planar_by_comp[comp_of[e.source]].add(e.id)
    components = [
        Component(c.id, c.vertices, frozenset(planar_by_comp[c.id])) for c in components
    ]

    intra: Dict[int, Set[int]] = {}
    inter: Dict[Tuple[int, int], Set[int]] = {}
    boundary: Dict[Tuple[int, int], Set[int]] = {}
    for e in d.edges:
        if e.id not in partition.crossed:
            continue
        ci, cj = comp_of[e.source], comp_of[e.target]
        if ci == cj:
            intra.setdefault(ci, set()).add(e.id)
        else:
            lo, hi = min(ci, cj), max(ci, cj)
            inter.setdefault((lo, hi), set()).add(e.id)
            boundary.setdefault((ci, cj), set()).add(e.source)
            boundary.setdefault((cj, ci), set()).add(e.target)

    return Decomposition(
        components=components,
        comp_of=comp_of,
        intra={k: frozenset(v) for k, v in intra.items()},
        inter={k: frozenset(v) for k, v in inter.items()},
        boundary_vertices={k: frozenset(v) for k, v in boundary.items()},
    )


# ---------------------------------------------------------------------------
# Rotation systems and face walks
# ---------------------------------------------------------------------------


class Dart(NamedTuple):
    tail: int
    edge: int


@dataclass(frozen=True)
class FaceWalk:
    face_id: int
    component_id: int
    walk: Tuple[Tuple[int, int], ...]  # (vertex id, instance index)
    size: int


class Chord(NamedTuple):
    edge: int
    a: int  # walk position of one anchor
    b: int


@dataclass(frozen=True)
class ConvexTrace:
    face_id: int
    component_id: int
    size: int
    chords: Tuple[Chord, ...]


def _tangent(d: Drawing, eid: int, vid: int) -> Tuple[int, int]:
    e = d.edge(eid)
    if vid == e.source:
        p, q = e.polyline[0], e.polyline[1]
    elif vid == e.target:
        p, q = e.polyline[-1], e.polyline[-2]
    else:
        raise ValueError(f"vertex {vid} is not an endpoint of edge {eid}")
    return (q.x - p.x, q.y - p.y)


def _angle_cmp(u: Tuple[int, int], v: Tuple[int, int]) -> int:
    # Counterclockwise order starting at the positive x-axis.
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


class _Embedding:
    """Rotation system of one component plus its traced faces."""

    def __init__(self, d: Drawing, dec: Decomposition, cid: int):
        comp = dec.component(cid)
        self.component_id = cid
        self.rotation: Dict[int, List[Dart]] = {}
        self.tangents: Dict[Dart, Tuple[int, int]] = {}
        darts: List[Dart] = []
        for eid in sorted(comp.planar_edges):
            e = d.edge(eid)
            for vid in (e.source, e.target):
                dart = Dart(vid, eid)
                darts.append(dart)
                self.tangents[dart] = _tangent(d, eid, vid)
        for dart in darts:
            self.rotation.setdefault(dart.tail, []).append(dart)
        for vid, ds in self.rotation.items():
            ds.sort(key=functools.cmp_to_key(lambda a, b: _angle_cmp(self.tangents[a], self.tangents[b])))
        self.rot_index: Dict[Dart, int] = {}
        for ds in self.rotation.values():
            for i, dart in enumerate(ds):
                self.rot_index[dart] = i

        self.walks: List[FaceWalk] = []
        self.position_of_dart: Dict[Dart, Tuple[int, int]] = {}
        self._trace_faces(d, comp)

    def _other_end(self, d: Drawing, dart: Dart) -> int:
        e = d.edge(dart.edge)
        return e.target if dart.tail == e.source else e.source

    def _next_dart(self, d: Drawing, dart: Dart) -> Dart:
        head = self._other_end(d, dart)
        rev = Dart(head, dart.edge)
        ds = self.rotation[head]
        i = self.rot_index[rev]
        return ds[i - 1]  # ccw-predecessor: traces with the face on the left

    def _trace_faces(self, d: Drawing, comp: Component) -> None:
        if not comp.planar_edges:
            for fid, vid in enumerate(sorted(comp.vertices)):
                self.walks.append(FaceWalk(fid, comp.id, (), 0))
            return
        seen: Set[Dart] = set()
        fid = 0
        all_darts = sorted(self.tangents)
        for start in all_darts:
            if start in seen:
                continue
            walk: List[Tuple[int, int]] = []
            instance_count: Dict[int, int] = {}
            dart = start
            while dart not in seen:
                seen.add(dart)
                inst = instance_count.get(dart.tail, 0)
                instance_count[dart.tail] = inst + 1
                self.position_of_dart[dart] = (fid, len(walk))
                walk.append((dart.tail, inst))
                dart = self._next_dart(d, dart)
            assert dart == start, "face tracing did not close its orbit"
            self.walks.append(FaceWalk(fid, comp.id, tuple(walk), len(walk)))
            fid += 1

    def anchor(self, direction: Tuple[int, int], vid: int) -> Tuple[int, int]:
        """Face id and walk position of the corner containing ``direction``.

        The corner is identified by the skeleton dart met first when rotating
        clockwise from the direction.
        """
        ds = self.rotation.get(vid)
        if not ds:
            raise AssignmentImpossibleError(f"vertex {vid} has no skeleton darts")
        best = None
        for dart in ds:  # ds is sorted ccw from the positive x-axis
            c = _angle_cmp(self.tangents[dart], direction)
            if c == 0:
                raise AssignmentImpossibleError(
                    f"tangent at vertex {vid} ties with skeleton edge {dart.edge}"
                )
            if c < 0:
                best = dart
            else:
                break
        if best is None:
            # Direction precedes every dart; wrap around to the ccw-largest.
            best = ds[-1]
        return self.position_of_dart[best]


def face_walks(d: Drawing, dec: Decomposition, cid: int) -> List[FaceWalk]:
    """Faces of one skeleton component, as boundary walks.

    Asserts the walk-length accounting (sum of face sizes = twice the edge
    count) and Euler's formula before returning.
    """
    emb = _Embedding(d, dec, cid)
    comp = dec.component(cid)
    total = sum(w.size for w in emb.walks)
    assert total == 2 * len(comp.planar_edges), "face sizes do not double-count edges"
    assert len(comp.vertices) - len(comp.planar_edges) + len(emb.walks) == 2, (
        "Euler check failed for component %d" % cid
    )
    return emb.walks


def assign_to_faces(
    d: Drawing,
    dec: Decomposition,
    cid: int,
    crossing_pairs: Optional[Dict] = None,
) -> Tuple[Dict[int, Tuple[int, ...]], Dict[int, ConvexTrace]]:
    """Assign each crossed edge living inside component ``cid`` to the face
    containing it, anchored at the boundary corners its tangents point into.

    Returns (face id -> edge ids, face id -> ConvexTrace).  When
    ``crossing_pairs`` (a CrossingSet pair map) is given, every interleaving
    chord pair is cross-checked against the real crossing set.
    """
    emb = _Embedding(d, dec, cid)
    assignment: Dict[int, List[int]] = {}
    chords: Dict[int, List[Chord]] = {}
    for eid in sorted(dec.intra.get(cid, ())):
        e = d.edge(eid)
        fa, pa = emb.anchor(_tangent(d, eid, e.source), e.source)
        fb, pb = emb.anchor(_tangent(d, eid, e.target), e.target)
        if fa != fb:
            raise AssignmentImpossibleError(
                f"edge {eid} anchors to two different faces ({fa} and {fb})"
            )
        assignment.setdefault(fa, []).append(eid)
        chords.setdefault(fa, []).append(Chord(eid, pa, pb))

    traces: Dict[int, ConvexTrace] = {}
    walks_by_id = {w.face_id: w for w in emb.walks}
    for fid, ch in sorted(chords.items()):
        trace = ConvexTrace(
            face_id=fid,
            component_id=cid,
            size=walks_by_id[fid].size,
            chords=tuple(sorted(ch)),
        )
        traces[fid] = trace
        if crossing_pairs is not None:
            for ia, ib in trace_crossings(trace):
                ea, eb = trace.chords[ia].edge, trace.chords[ib].edge
                key = (min(ea, eb), max(ea, eb))
                assert key in crossing_pairs, (
                    f"chords of edges {ea}, {eb} interleave but the edges do not cross"
                )
    return (
        {fid: tuple(sorted(eids)) for fid, eids in sorted(assignment.items())},
        traces,
    )


def chords_interleave(c1: Chord, c2: Chord) -> bool:
    a1, b1 = sorted((c1.a, c1.b))
    a2, b2 = sorted((c2.a, c2.b))
    return (a1 < a2 < b1 < b2) or (a2 < a1 < b2 < b1)


def trace_crossings(t: ConvexTrace) -> Set[Tuple[int, int]]:
    """Pairs of chord indices whose anchors strictly interleave on the walk
    (the convex-position crossing rule)."""
    out: Set[Tuple[int, int]] = set()
    for i in range(len(t.chords)):
        for j in range(i + 1, len(t.chords)):
            if chords_interleave(t.chords[i], t.chords[j]):
                out.add((i, j))
    return out


# ---------------------------------------------------------------------------
# Abstract graphs: planarity and four-coloring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbstractGraph:
    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add(key)


def is_planar(g: AbstractGraph, return_witness: bool = False):
    """Planarity of an abstract graph (edge-count shortcut, then LR test)."""
    if not return_witness and len(g.edges) > max(0, 3 * g.n - 6):
        return False
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    ok, cert = nx.check_planarity(G, counterexample=return_witness)
    if return_witness:
        witness = None if ok else tuple(sorted(tuple(sorted(e)) for e in cert.edges()))
        return ok, witness
    return ok


def adjacency(g: AbstractGraph) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in range(g.n)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _smallest_last_order(adj: Dict[int, Set[int]]) -> List[int]:
    import heapq

    deg = {v: len(ns) for v, ns in adj.items()}
    heap = [(deg[v], v) for v in adj]
    heapq.heapify(heap)
    removed: Set[int] = set()
    order: List[int] = []
    while heap:
        dv, v = heapq.heappop(heap)
        if v in removed or dv != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        for u in adj[v]:
            if u not in removed:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    order.reverse()
    return order


def _kempe_flip(adj, colors, start: int, c1: int, c2: int) -> Set[int]:
    """Flip c1/c2 on the chain containing start; returns the flipped set."""
    comp = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in comp:
                continue
            cw = colors.get(w)
            if cw == c1 or cw == c2:
                comp.add(w)
                stack.append(w)
    for u in comp:
        colors[u] = c2 if colors[u] == c1 else c1
    return comp


def four_color(g: AbstractGraph) -> Dict[int, int]:
    """Proper coloring with colors {1, 2, 3, 4}, deterministic per input.

    Greedy over a smallest-last order, Kempe-chain recoloring when stuck,
    exhaustive backtracking as the final resort.  Raises
    FourColorSearchError only if the input was not actually planar.
    """
    adj = adjacency(g)
    order = _smallest_last_order(adj)
    colors: Dict[int, int] = {}
    ok = True
    for v in order:
        used = {colors[u] for u in adj[v] if u in colors}
        free = [c for c in (1, 2, 3, 4) if c not in used]
        if free:
            colors[v] = free[0]
            continue
        if _kempe_rescue(adj, colors, v):
            continue
        ok = False
        break
    if ok:
        _assert_proper(adj, colors)
        return colors

    colors = _backtrack_four_color(adj, order)
    _assert_proper(adj, colors)
    return colors


def _kempe_rescue(adj, colors, v: int) -> bool:
    neighbor_cols = sorted({colors[u] for u in adj[v] if u in colors})
    for c1 in neighbor_cols:
        for c2 in (1, 2, 3, 4):
            if c2 == c1:
                continue
            anchors = sorted(u for u in adj[v] if colors.get(u) == c1)
            for u in anchors:
                flipped = _kempe_flip(adj, colors, u, c1, c2)
                used = {colors[w] for w in adj[v] if w in colors}
                free = [c for c in (1, 2, 3, 4) if c not in used]
                if free:
                    colors[v] = free[0]
                    return True
                _kempe_flip_back(adj, colors, flipped, c1, c2)
    return False


def _kempe_flip_back(adj, colors, flipped: Set[int], c1: int, c2: int) -> None:
    for u in flipped:
        colors[u] = c2 if colors[u] == c1 else c1


def _backtrack_four_color(adj, order: List[int]) -> Dict[int, int]:
    n = len(order)
    colors: Dict[int, int] = {}
    choice = [0] * n
    i = 0
    while 0 <= i < n:
        v = order[i]
        placed = False
        for c in range(choice[i] + 1, 5):
            if all(colors.get(u) != c for u in adj[v]):
                colors[v] = c
                choice[i] = c
                placed = True
                break
        if placed:
            i += 1
        else:
            choice[i] = 0
            colors.pop(v, None)
            i -= 1
    if i < 0:
        raise FourColorSearchError("no 4-coloring found; input graph was not planar")
    return colors


def _assert_proper(adj, colors) -> None:
    for v, ns in adj.items():
        for u in ns:
            assert colors[v] != colors[u], f"improper coloring on edge ({v}, {u})"
        assert colors[v] in (1, 2, 3, 4)

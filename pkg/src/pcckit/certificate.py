"""Mechanical sparsity certification of a drawing.

Given a drawing whose every crossing pair is independent and planarly
connected, this module replays the counting argument that bounds the number
of edges linearly in the number of vertices: per-face chord bounds inside
each skeleton component, planarity of the component-link graph, bipartite
audits of the crossed edges between color classes across component pairs,
and planar audits of the boundary-vertex sums.  Every inequality is checked
on the concrete drawing; a failure raises LemmaViolationError, which on
hypothesis-satisfying inputs can only mean an implementation bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import search
from .checkers import PccReport, check_pcc
from .drawing import CrossingSet, Drawing, compute_crossings, partition_edges
from .errors import LemmaViolationError
from .planar import (
    AbstractGraph,
    ConvexTrace,
    Decomposition,
    FaceWalk,
    assign_to_faces,
    chords_interleave,
    decompose,
    face_walks,
    four_color,
    is_planar,
)

CROSSING_FAMILY_LIMIT = 8  # largest pairwise-crossing family a valid input may contain
PER_FACE_FACTOR = 16
PER_COMPONENT_FACTOR = 96
PAIR_FACTOR = 8
SUM_VERTEX_FACTOR = 3
SUM_DEGREE_FACTOR = 12
CROSSED_TOTAL_FACTOR = 696
EDGE_TOTAL_FACTOR = 699


def capoyleas_pach_bound(n: int, k: int) -> int:
    """Most edges of an n-vertex convex geometric graph with no k+1
    pairwise crossing edges."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n <= 2 * k + 1:
        return n * (n - 1) // 2
    return 2 * k * n - (2 * k + 1) * k  # 2kn - C(2k+1, 2)


@dataclass(frozen=True)
class FaceRecord:
    component_id: int
    face_id: int
    face_size: int
    chord_count: int
    max_crossing_family: int
    cp_bound: int
    coarse_bound: int


@dataclass(frozen=True)
class ComponentRecord:
    component_id: int
    vertex_count: int
    planar_edge_count: int
    face_size_sum: int
    intra_count: int
    cp_face_sum: int
    coarse_face_sum: int
    bound: int


@dataclass(frozen=True)
class ComponentGraphRecord:
    vertex_count: int
    edge_count: int
    planar: bool


@dataclass(frozen=True)
class ColorPairAudit:
    color_a: int
    color_b: int
    edge_count: int
    side_a_vertices: int
    side_b_vertices: int
    crossing_free: bool
    bipartite: bool


@dataclass(frozen=True)
class PairRecord:
    comp_a: int
    comp_b: int
    edge_count: int
    boundary_a: int
    boundary_b: int
    bound: int
    audits: Tuple[ColorPairAudit, ...]


@dataclass(frozen=True)
class HubLinkAudit:
    component_id: int
    color: int
    vertex_count: int
    edge_count: int
    planar: bool


@dataclass(frozen=True)
class SumRecord:
    component_id: int
    boundary_total: int
    hub_degree: int
    bound: int
    audits: Tuple[HubLinkAudit, ...]


@dataclass(frozen=True)
class CertificateTotals:
    n: int
    planar_count: int
    crossed_count: int
    edge_count: int
    planar_bound: int
    crossed_bound: int
    edge_bound: int
    density: Fraction


@dataclass
class Certificate:
    hypothesis_ok: bool
    hypothesis_report: PccReport
    face_records: List[FaceRecord] = field(default_factory=list)
    component_records: List[ComponentRecord] = field(default_factory=list)
    component_graph: Optional[ComponentGraphRecord] = None
    pair_records: List[PairRecord] = field(default_factory=list)
    sum_records: List[SumRecord] = field(default_factory=list)
    totals: Optional[CertificateTotals] = None

    @property
    def valid(self) -> bool:
        return self.hypothesis_ok and self.totals is not None


def _fail(msg: str) -> None:
    raise LemmaViolationError(msg)


def verify_intra(
    d: Drawing,
    dec: Decomposition,
    walks: Dict[int, List[FaceWalk]],
    traces: Dict[int, Dict[int, ConvexTrace]],
    assignments: Dict[int, Dict[int, Tuple[int, ...]]],
) -> Tuple[List[FaceRecord], List[ComponentRecord]]:
    """Per-face chord bounds and the per-component aggregate bound.

    Each link of the chain is checked separately so a failure localizes:
    chords per face <= sharp convex bound <= 16|face|, summed over faces
    <= 32 * (planar edges) <= 96 * (vertices).
    """
    face_records: List[FaceRecord] = []
    comp_records: List[ComponentRecord] = []
    for comp in dec.components:
        cid = comp.id
        cp_sum = 0
        coarse_sum = 0
        assigned_total = 0
        face_size_sum = 0
        for w in walks[cid]:
            face_size_sum += w.size
            chords = traces[cid].get(w.face_id)
            chord_count = len(chords.chords) if chords else 0
            assigned_total += chord_count
            fam = 0
            if chords:
                fam = _max_interleaving_family(chords)
                if fam > CROSSING_FAMILY_LIMIT:
                    _fail(
                        f"component {cid} face {w.face_id}: {fam} pairwise "
                        f"crossing chords exceed {CROSSING_FAMILY_LIMIT}"
                    )
            cp = capoyleas_pach_bound(w.size, CROSSING_FAMILY_LIMIT)
            coarse = PER_FACE_FACTOR * w.size
            if chord_count > cp:
                _fail(
                    f"component {cid} face {w.face_id}: {chord_count} chords "
                    f"exceed the convex bound {cp}"
                )
            if chord_count > coarse:
                _fail(
                    f"component {cid} face {w.face_id}: {chord_count} chords "
                    f"exceed {PER_FACE_FACTOR}*{w.size}"
                )
            cp_sum += cp
            coarse_sum += coarse
            face_records.append(
                FaceRecord(cid, w.face_id, w.size, chord_count, fam, cp, coarse)
            )
        intra_count = len(dec.intra.get(cid, ()))
        if assigned_total != intra_count:
            _fail(
                f"component {cid}: {assigned_total} chords assigned to faces "
                f"but {intra_count} crossed edges live inside"
            )
        bound = PER_COMPONENT_FACTOR * len(comp.vertices)
        if not (
            intra_count <= cp_sum
            and cp_sum <= coarse_sum
            and coarse_sum == 2 * PER_FACE_FACTOR * len(comp.planar_edges)
            and coarse_sum <= bound
        ):
            _fail(f"component {cid}: aggregate chord chain broken")
        comp_records.append(
            ComponentRecord(
                cid,
                len(comp.vertices),
                len(comp.planar_edges),
                face_size_sum,
                intra_count,
                cp_sum,
                coarse_sum,
                bound,
            )
        )
    return face_records, comp_records


def _max_interleaving_family(trace: ConvexTrace) -> int:
    chords = trace.chords
    neighbors = {i: set() for i in range(len(chords))}
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            if chords_interleave(chords[i], chords[j]):
                neighbors[i].add(j)
                neighbors[j].add(i)
    size, _ = search.max_clique_size(neighbors, CROSSING_FAMILY_LIMIT + 1)
    return size


def build_component_graph(dec: Decomposition) -> AbstractGraph:
    """One vertex per skeleton component; an edge wherever some crossed
    edge links the two components."""
    edges = tuple(sorted(dec.inter.keys()))
    return AbstractGraph(len(dec.components), edges)


def verify_inter(
    d: Drawing,
    dec: Decomposition,
    colorings: Dict[int, Dict[int, int]],
    crossings: Optional[CrossingSet] = None,
) -> List[PairRecord]:
    """Crossed edges between two components, split by color classes.

    For each component pair and each color pair, the selected edges must be
    mutually crossing-free (checked against the real crossing set), form a
    bipartite graph by construction, and number at most twice their vertex
    count; the aggregate reproduces the 8(|boundary_a| + |boundary_b|) bound.
    """
    if crossings is None:
        crossings = compute_crossings(d)
    records: List[PairRecord] = []
    for (ci, cj), eids in sorted(dec.inter.items()):
        audits: List[ColorPairAudit] = []
        buckets: Dict[Tuple[int, int], List[int]] = {}
        for eid in sorted(eids):
            e = d.edge(eid)
            u, v = e.source, e.target
            if dec.comp_of[u] == cj:
                u, v = v, u
            cu = colorings[ci][u]
            cv = colorings[cj][v]
            buckets.setdefault((cu, cv), []).append(eid)

        side_a_total = dec.boundary_vertices[(ci, cj)]
        side_b_total = dec.boundary_vertices[(cj, ci)]
        for ca in (1, 2, 3, 4):
            side_a = {v for v in side_a_total if colorings[ci][v] == ca}
            for cb in (1, 2, 3, 4):
                side_b = {v for v in side_b_total if colorings[cj][v] == cb}
                group = buckets.get((ca, cb), [])
                crossing_free = True
                for x in range(len(group)):
                    for y in range(x + 1, len(group)):
                        if crossings.crosses(group[x], group[y]):
                            crossing_free = False
                if not crossing_free:
                    _fail(
                        f"components ({ci}, {cj}) colors ({ca}, {cb}): "
                        "same-color-pair crossed edges cross each other"
                    )
                # Sides live in different components, so the edge set is
                # bipartite by construction.
                bipartite = True
                if len(group) > 2 * (len(side_a) + len(side_b)):
                    _fail(
                        f"components ({ci}, {cj}) colors ({ca}, {cb}): "
                        f"{len(group)} edges exceed 2*({len(side_a)}+{len(side_b)})"
                    )
                audits.append(
                    ColorPairAudit(
                        ca, cb, len(group), len(side_a), len(side_b), crossing_free, bipartite
                    )
                )
        bound = PAIR_FACTOR * (len(side_a_total) + len(side_b_total))
        if len(eids) > bound:
            _fail(
                f"components ({ci}, {cj}): {len(eids)} linking edges exceed {bound}"
            )
        records.append(
            PairRecord(
                ci, cj, len(eids), len(side_a_total), len(side_b_total), bound, tuple(audits)
            )
        )
    return records


def verify_sum(
    d: Drawing,
    dec: Decomposition,
    component_graph: AbstractGraph,
    colorings: Dict[int, Dict[int, int]],
) -> List[SumRecord]:
    """Bound the total number of boundary vertices of each component.

    For each component and color class, link that component's same-colored
    boundary vertices to the neighboring components they reach; the linking
    graph must be planar, so its edge count is at most three times its
    vertex count.  Aggregating over the four colors gives
    3|V_i| + 12 deg(component).
    """
    hub_adj: Dict[int, List[int]] = {i: [] for i in range(component_graph.n)}
    for a, b in component_graph.edges:
        hub_adj[a].append(b)
        hub_adj[b].append(a)

    records: List[SumRecord] = []
    for comp in dec.components:
        cid = comp.id
        neighbors = sorted(hub_adj[cid])
        audits: List[HubLinkAudit] = []
        boundary_total = 0
        for j in neighbors:
            key = (cid, j)
            boundary_total += len(dec.boundary_vertices.get(key, ()))
        for color in (1, 2, 3, 4):
            class_vertices = sorted(
                v for v in comp.vertices if colorings[cid][v] == color
            )
            index = {v: i for i, v in enumerate(class_vertices)}
            hub_index = {j: len(class_vertices) + i for i, j in enumerate(neighbors)}
            edges = []
            edge_count = 0
            for j in neighbors:
                for v in dec.boundary_vertices.get((cid, j), ()):
                    if colorings[cid][v] == color:
                        edges.append((index[v], hub_index[j]))
                        edge_count += 1
            g = AbstractGraph(len(class_vertices) + len(neighbors), tuple(sorted(edges)))
            planar = is_planar(g)
            if not planar:
                _fail(f"component {cid} color {color}: hub-link graph is not planar")
            if edge_count > SUM_VERTEX_FACTOR * g.n:
                _fail(
                    f"component {cid} color {color}: {edge_count} links exceed "
                    f"{SUM_VERTEX_FACTOR}*{g.n}"
                )
            audits.append(HubLinkAudit(cid, color, g.n, edge_count, planar))
        bound = SUM_VERTEX_FACTOR * len(comp.vertices) + SUM_DEGREE_FACTOR * len(neighbors)
        if boundary_total > bound:
            _fail(
                f"component {cid}: {boundary_total} boundary vertices exceed {bound}"
            )
        records.append(SumRecord(cid, boundary_total, len(neighbors), bound, tuple(audits)))
    return records


def certify(d: Drawing) -> Certificate:
    """Run the full pipeline and return the machine-checkable certificate.

    If the hypothesis fails (some crossing pair shares a vertex or is not
    planarly connected) the certificate carries the refusal and no lemma
    records.
    """
    hypothesis = check_pcc(d, require_independent=True)
    cert = Certificate(hypothesis_ok=hypothesis.holds, hypothesis_report=hypothesis)
    if not hypothesis.holds:
        return cert

    crossings = compute_crossings(d)
    part = partition_edges(d, crossings)
    dec = decompose(d, part)

    walks: Dict[int, List[FaceWalk]] = {}
    traces: Dict[int, Dict[int, ConvexTrace]] = {}
    assignments: Dict[int, Dict[int, Tuple[int, ...]]] = {}
    for comp in dec.components:
        walks[comp.id] = face_walks(d, dec, comp.id)
        assignment, tr = assign_to_faces(d, dec, comp.id, crossings.pairs)
        assignments[comp.id] = assignment
        traces[comp.id] = tr

    cert.face_records, cert.component_records = verify_intra(
        d, dec, walks, traces, assignments
    )

    cgraph = build_component_graph(dec)
    cg_planar = is_planar(cgraph)
    cert.component_graph = ComponentGraphRecord(cgraph.n, len(cgraph.edges), cg_planar)
    if not cg_planar:
        _fail("component-link graph is not planar")

    colorings: Dict[int, Dict[int, int]] = {}
    for comp in dec.components:
        sub_vertices = sorted(comp.vertices)
        index = {v: i for i, v in enumerate(sub_vertices)}
        sub_edges = tuple(
            sorted(
                (index[d.edge(eid).source], index[d.edge(eid).target])
                for eid in comp.planar_edges
            )
        )
        sub_edges = tuple((min(a, b), max(a, b)) for a, b in sub_edges)
        coloring = four_color(AbstractGraph(len(sub_vertices), sub_edges))
        colorings[comp.id] = {v: coloring[index[v]] for v in sub_vertices}

    cert.pair_records = verify_inter(d, dec, colorings, crossings)
    cert.sum_records = verify_sum(d, dec, cgraph, colorings)

    n = d.n
    planar_count = len(part.planar)
    crossed_count = len(part.crossed)
    intra_total = sum(r.intra_count for r in cert.component_records)
    inter_total = sum(r.edge_count for r in cert.pair_records)
    if intra_total + inter_total != crossed_count:
        _fail(
            f"crossed-edge accounting broken: {intra_total} within + "
            f"{inter_total} across != {crossed_count}"
        )
    if planar_count > 3 * n:
        _fail(f"{planar_count} crossing-free edges exceed 3n = {3 * n}")
    if crossed_count > CROSSED_TOTAL_FACTOR * n:
        _fail(f"{crossed_count} crossed edges exceed {CROSSED_TOTAL_FACTOR}n")
    edge_count = planar_count + crossed_count
    if edge_count > EDGE_TOTAL_FACTOR * n:
        _fail(f"{edge_count} edges exceed {EDGE_TOTAL_FACTOR}n")
    cert.totals = CertificateTotals(
        n=n,
        planar_count=planar_count,
        crossed_count=crossed_count,
        edge_count=edge_count,
        planar_bound=3 * n,
        crossed_bound=CROSSED_TOTAL_FACTOR * n,
        edge_bound=EDGE_TOTAL_FACTOR * n,
        density=Fraction(edge_count, n) if n else Fraction(0),
    )
    return cert

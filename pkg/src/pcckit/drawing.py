"""The topological drawing model.

A drawing is a set of vertices at distinct integer points plus edges realized
as polylines.  Validation classifies every pairwise intersection exactly and
rejects all degeneracies (overlaps, contacts at bends, coincident crossing
points, vertices on edge interiors), so that downstream face and corner logic
never needs a special case.  The full pairwise classification is computed
once per drawing and cached; the crossing set, the simplicity test and the
planar/crossed partition are all read off from it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import _scan
from .errors import InvalidDrawingError
from .geom import (
    COORD_BOUND,
    Point,
    Segment,
    SegmentRelation,
    classify_raw,
    key_to_fractions,
)

RationalPoint = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Vertex:
    id: int
    point: Point


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    target: int
    polyline: Tuple[Point, ...]

    def endpoints(self) -> FrozenSet[int]:
        return frozenset((self.source, self.target))

    def segments(self) -> List[Segment]:
        pts = self.polyline
        return [Segment(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


class ViolationKind(enum.Enum):
    DUPLICATE_VERTEX_POINT = "DuplicateVertexPoint"
    LOOP_OR_PARALLEL_EDGE = "LoopOrParallelEdge"
    VERTEX_ON_EDGE_INTERIOR = "VertexOnEdgeInterior"
    OVERLAP_BETWEEN_EDGES = "OverlapBetweenEdges"
    CROSSING_AT_BEND = "CrossingAtBend"
    COINCIDENT_CROSSINGS = "CoincidentCrossings"
    MALFORMED_POLYLINE = "MalformedPolyline"
    OUT_OF_RANGE = "OutOfRange"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    ids: Tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value}{self.ids}: {self.detail}"


@dataclass
class ValidationReport:
    violations: List[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations


@dataclass
class CrossingSet:
    """All proper crossings of a drawing, indexed by unordered edge-id pair."""

    pairs: Dict[Tuple[int, int], Tuple[RationalPoint, ...]]
    degree: Dict[int, int]

    def sorted_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.pairs)

    def crosses(self, e1: int, e2: int) -> bool:
        return (min(e1, e2), max(e1, e2)) in self.pairs

    def crossing_count(self, eid: int) -> int:
        return self.degree.get(eid, 0)

    def total_crossings(self) -> int:
        return sum(len(p) for p in self.pairs.values())


@dataclass
class EdgePartition:
    planar: FrozenSet[int]
    crossed: FrozenSet[int]


@dataclass
class _Analysis:
    report: ValidationReport
    crossing_set: Optional[CrossingSet]
    # Per unordered edge-id pair: total number of intersection points
    # (the shared endpoint, if any, plus proper crossings).
    intersection_counts: Dict[Tuple[int, int], int]


@dataclass(eq=False)
class Drawing:
    vertices: List[Vertex]
    edges: List[Edge]
    _analysis: Optional[_Analysis] = field(default=None, repr=False)

    def __post_init__(self):
        seen_v = set()
        for v in self.vertices:
            if v.id < 0 or v.id in seen_v:
                raise ValueError(f"vertex id {v.id} missing, negative or duplicated")
            seen_v.add(v.id)
        seen_e = set()
        for e in self.edges:
            if e.id < 0 or e.id in seen_e:
                raise ValueError(f"edge id {e.id} negative or duplicated")
            seen_e.add(e.id)
            if e.source not in seen_v or e.target not in seen_v:
                raise ValueError(f"edge {e.id} references unknown vertex")
            if len(e.polyline) < 2:
                raise ValueError(f"edge {e.id} polyline needs at least two points")
        self._vmap = {v.id: v for v in self.vertices}
        self._emap = {e.id: e for e in self.edges}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_point(self, vid: int) -> Point:
        return self._vmap[vid].point

    def edge(self, eid: int) -> Edge:
        return self._emap[eid]

    def shared_vertices(self, e1: int, e2: int) -> FrozenSet[int]:
        return self.edge(e1).endpoints() & self.edge(e2).endpoints()


def drawing_from_data(vertices, edges) -> Drawing:
    """Build a Drawing from plain tuples: (id, x, y) and (id, src, dst, pts)."""
    vs = [Vertex(vid, Point(int(x), int(y))) for vid, x, y in vertices]
    es = [
        Edge(eid, src, dst, tuple(Point(int(x), int(y)) for x, y in pts))
        for eid, src, dst, pts in edges
    ]
    return Drawing(vs, es)


def validate_drawing(d: Drawing, threads: int = 1) -> ValidationReport:
    """Classify every pairwise intersection and report all broken invariants."""
    return _analyze(d, threads).report


def compute_crossings(d: Drawing, threads: int = 1) -> CrossingSet:
    """All proper crossing pairs with their exact crossing points.

    Requires a valid drawing; raises InvalidDrawingError otherwise.
    """
    a = _require_valid(d, threads)
    assert a.crossing_set is not None
    return a.crossing_set


def is_simple(d: Drawing) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """True iff every edge pair meets at most once; else the first bad pair.

    A shared endpoint counts as the single allowed intersection point.
    """
    a = _require_valid(d)
    bad = [pair for pair, cnt in a.intersection_counts.items() if cnt > 1]
    if bad:
        return False, min(bad)
    return True, None


def partition_edges(d: Drawing, crossings: Optional[CrossingSet] = None) -> EdgePartition:
    """Split edge ids into crossing-free and crossed sets."""
    if crossings is None:
        crossings = compute_crossings(d)
    crossed = frozenset(
        eid for eid in (e.id for e in d.edges) if crossings.crossing_count(eid) > 0
    )
    planar = frozenset(e.id for e in d.edges) - crossed
    return EdgePartition(planar=planar, crossed=crossed)


def _require_valid(d: Drawing, threads: int = 1) -> _Analysis:
    a = _analyze(d, threads)
    if not a.report.valid:
        raise InvalidDrawingError(a.report)
    return a


def _analyze(d: Drawing, threads: int = 1) -> _Analysis:
    if d._analysis is not None:
        return d._analysis

    violations: List[Violation] = []

    max_abs = 0
    for v in d.vertices:
        max_abs = max(max_abs, abs(v.point.x), abs(v.point.y))
    for e in d.edges:
        for p in e.polyline:
            max_abs = max(max_abs, abs(p.x), abs(p.y))
    if max_abs > COORD_BOUND:
        violations.append(
            Violation(ViolationKind.OUT_OF_RANGE, (), f"|coordinate| up to {max_abs} > 2**30")
        )
        d._analysis = _Analysis(ValidationReport(violations), None, {})
        return d._analysis

    _check_vertices(d, violations)
    _check_edge_structure(d, violations)

    seg_list: List[Tuple[int, int, int, int]] = []
    seg_owner: List[int] = []  # index into d.edges
    seg_pos: List[int] = []
    for ei, e in enumerate(d.edges):
        pts = e.polyline
        for k in range(len(pts) - 1):
            a, b = pts[k], pts[k + 1]
            if a == b:
                continue  # already reported as malformed
            seg_list.append((a.x, a.y, b.x, b.y))
            seg_owner.append(ei)
            seg_pos.append(k)

    # Contact points are keyed by canonical integer 4-tuples
    # (x_num, x_den, y_num, y_den); Fractions appear only in the public
    # CrossingSet.
    pair_contacts: Dict[Tuple[int, int], Dict[tuple, SegmentRelation]] = {}
    edge_ids = [e.id for e in d.edges]
    for si, sj in _scan.segment_pair_candidates(seg_list, max_abs, threads):
        ei, ej = seg_owner[si], seg_owner[sj]
        a = seg_list[si]
        b = seg_list[sj]
        rel, ptkey = classify_raw(
            a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]
        )
        if rel is SegmentRelation.DISJOINT:
            continue
        if ei == ej:
            _check_self_contact(d.edges[ei], seg_pos[si], seg_pos[sj], rel, violations)
            continue
        ea, eb = edge_ids[ei], edge_ids[ej]
        key = (ea, eb) if ea < eb else (eb, ea)
        if rel is SegmentRelation.OVERLAP:
            violations.append(
                Violation(
                    ViolationKind.OVERLAP_BETWEEN_EDGES,
                    key,
                    "edges share a collinear piece of positive length",
                )
            )
        else:
            contacts = pair_contacts.setdefault(key, {})
            prev = contacts.get(ptkey)
            if prev is None or prev is SegmentRelation.ENDPOINT_TOUCH:
                contacts[ptkey] = rel

    crossing_pairs: Dict[Tuple[int, int], List[tuple]] = {}
    intersection_counts: Dict[Tuple[int, int], int] = {}
    point_owners: Dict[tuple, List[Tuple[int, int]]] = {}

    for key in sorted(pair_contacts):
        e1 = d.edge(key[0])
        e2 = d.edge(key[1])
        shared = e1.endpoints() & e2.endpoints()
        shared_keys = {
            (p.x, 1, p.y, 1) for p in (d.vertex_point(v) for v in shared)
        }
        count = len(shared)
        for pt in sorted(pair_contacts[key]):
            rel = pair_contacts[key][pt]
            if rel is SegmentRelation.PROPER_CROSSING:
                crossing_pairs.setdefault(key, []).append(pt)
                point_owners.setdefault(pt, []).append(key)
                count += 1
            else:
                _check_contact(d, key, e1, e2, pt, rel, shared_keys, violations)
        intersection_counts[key] = count

    _check_vertex_incidences(d, seg_list, seg_owner, max_abs, violations)

    for pt in sorted(point_owners):
        owners = point_owners[pt]
        if len(owners) > 1:
            ids = tuple(sorted({eid for pair in owners for eid in pair}))
            x, y = key_to_fractions(pt)
            violations.append(
                Violation(
                    ViolationKind.COINCIDENT_CROSSINGS,
                    ids,
                    f"{len(owners)} crossings coincide at ({x}, {y})",
                )
            )

    crossing_set = None
    if not violations:
        pairs = {
            k: tuple(key_to_fractions(pt) for pt in v)
            for k, v in sorted(crossing_pairs.items())
        }
        degree: Dict[int, int] = {}
        for (a, b), pts in pairs.items():
            degree[a] = degree.get(a, 0) + len(pts)
            degree[b] = degree.get(b, 0) + len(pts)
        crossing_set = CrossingSet(pairs=pairs, degree=degree)

    d._analysis = _Analysis(ValidationReport(violations), crossing_set, intersection_counts)
    return d._analysis


def _check_vertices(d: Drawing, violations: List[Violation]) -> None:
    by_point: Dict[Point, int] = {}
    for v in d.vertices:
        if v.point in by_point:
            violations.append(
                Violation(
                    ViolationKind.DUPLICATE_VERTEX_POINT,
                    (by_point[v.point], v.id),
                    f"both at {tuple(v.point)}",
                )
            )
        else:
            by_point[v.point] = v.id


def _check_edge_structure(d: Drawing, violations: List[Violation]) -> None:
    by_pair: Dict[FrozenSet[int], int] = {}
    for e in d.edges:
        if e.source == e.target:
            violations.append(
                Violation(ViolationKind.LOOP_OR_PARALLEL_EDGE, (e.id,), "loop edge")
            )
            continue
        pair = e.endpoints()
        if pair in by_pair:
            violations.append(
                Violation(
                    ViolationKind.LOOP_OR_PARALLEL_EDGE,
                    (by_pair[pair], e.id),
                    "parallel edges",
                )
            )
        else:
            by_pair[pair] = e.id
        if e.polyline[0] != d.vertex_point(e.source):
            violations.append(
                Violation(
                    ViolationKind.MALFORMED_POLYLINE,
                    (e.id,),
                    "polyline does not start at the source vertex",
                )
            )
        if e.polyline[-1] != d.vertex_point(e.target):
            violations.append(
                Violation(
                    ViolationKind.MALFORMED_POLYLINE,
                    (e.id,),
                    "polyline does not end at the target vertex",
                )
            )
        for k in range(len(e.polyline) - 1):
            if e.polyline[k] == e.polyline[k + 1]:
                violations.append(
                    Violation(
                        ViolationKind.MALFORMED_POLYLINE,
                        (e.id,),
                        f"consecutive polyline points {k} and {k + 1} coincide",
                    )
                )


def _check_self_contact(edge: Edge, pos_i, pos_j, rel, violations: List[Violation]) -> None:
    lo, hi = min(pos_i, pos_j), max(pos_i, pos_j)
    if hi - lo == 1:
        if rel is SegmentRelation.OVERLAP:
            violations.append(
                Violation(
                    ViolationKind.MALFORMED_POLYLINE,
                    (edge.id,),
                    f"polyline folds back onto itself at bend {hi}",
                )
            )
        # The shared bend point itself is the expected contact.
        return
    violations.append(
        Violation(
            ViolationKind.MALFORMED_POLYLINE,
            (edge.id,),
            f"polyline self-intersects (segments {lo} and {hi})",
        )
    )


def _check_contact(d, key, e1, e2, pt, rel, shared_keys, violations) -> None:
    if pt in shared_keys:
        return  # contact at the shared graph vertex: the one legal touch
    as_int = None
    if pt[1] == 1 and pt[3] == 1:
        as_int = Point(pt[0], pt[2])
    is_vertex = as_int is not None and any(
        d.vertex_point(v) == as_int for e in (e1, e2) for v in (e.source, e.target)
    )
    if is_vertex:
        violations.append(
            Violation(
                ViolationKind.VERTEX_ON_EDGE_INTERIOR,
                key,
                f"an endpoint vertex lies on the other edge at {tuple(as_int)}",
            )
        )
    else:
        x, y = key_to_fractions(pt)
        violations.append(
            Violation(
                ViolationKind.CROSSING_AT_BEND,
                key,
                f"edges meet at a polyline bend at ({x}, {y})",
            )
        )


def _check_vertex_incidences(d, seg_list, seg_owner, max_abs, violations) -> None:
    points = [(v.point.x, v.point.y) for v in d.vertices]
    hits = _scan.vertex_on_segment_candidates(points, seg_list, max_abs)
    seen = set()
    for vi, si in hits:
        v = d.vertices[vi]
        e = d.edges[seg_owner[si]]
        if v.id in (e.source, e.target):
            # Its own endpoint; revisits elsewhere on the polyline surface as
            # self-intersections in the pair scan.
            x1, y1, x2, y2 = seg_list[si]
            if (v.point.x, v.point.y) in ((x1, y1), (x2, y2)):
                continue
        key = (v.id, e.id)
        if key in seen:
            continue
        seen.add(key)
        violations.append(
            Violation(
                ViolationKind.VERTEX_ON_EDGE_INTERIOR,
                key,
                f"vertex {v.id} at {tuple(v.point)} lies on edge {e.id}",
            )
        )

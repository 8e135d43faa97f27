"""Drawing generators.

``toth_construction`` realizes the dense planarly-connected drawing on an
axis spine: consecutive spine edges, one-step and two-step detour arcs
bulging to either side, three fan centers far out on each side joined to
every spine point, and crossing-free edges among each side's centers.
``star_complete`` draws a complete graph with one vertex's star
crossing-free, every other edge routed as a staple over a line of vertices.
``random_pcc_greedy`` grows a random planarly-connected drawing edge by
edge for density probing.

All coordinates are chosen so validation passes exactly: spine spacing 8,
detour bulges of width 2, fan centers at x = +-512 with heights 9, 262 and
513.  The height gaps (253 and 504) are coprime, which rules out three
straight fan edges meeting in a point for any spine of at most 256 points;
fan edges stay short of slope 4, so they thread the detour arcs of their
own target and nothing else.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Tuple

from .checkers import check_pcc
from .drawing import Drawing, Edge, Point, Vertex, drawing_from_data
from .geom import Segment, SegmentRelation, classify_segments

SPINE_STEP = 8
BULGE = 2
FAN_X = 512
FAN_HEIGHTS = (9, 262, 513)
TOTH_MIN_N = 10
TOTH_MAX_N = 250  # fixed layout keeps fan slopes below 4 up to here

STAR_MIN_N = 3
STAR_MAX_N = 12


def toth_construction(n: int) -> Drawing:
    """The 9n - 54 edge planarly-connected drawing on n vertices.

    Edge inventory: n-7 consecutive spine edges (crossing-free), n-8
    one-step arcs to the left, n-9 two-step arcs to the right, 6(n-6) fan
    edges, and 6 crossing-free edges among the fan centers.
    """
    if n < TOTH_MIN_N:
        raise ValueError(f"n must be at least {TOTH_MIN_N}, got {n}")
    if n > TOTH_MAX_N:
        raise ValueError(
            f"n must be at most {TOTH_MAX_N}: the fixed coordinate layout "
            "does not extend further"
        )
    m = n - 6
    vertices: List[Tuple[int, int, int]] = []
    for t in range(m):
        vertices.append((t, 0, SPINE_STEP * t))
    left = [m, m + 1, m + 2]
    right = [m + 3, m + 4, m + 5]
    for k in range(3):
        vertices.append((left[k], -FAN_X, FAN_HEIGHTS[k]))
    for k in range(3):
        vertices.append((right[k], FAN_X, FAN_HEIGHTS[k]))

    edges: List[Tuple[int, int, int, List[Tuple[int, int]]]] = []
    eid = 0

    def add(src: int, dst: int, pts: List[Tuple[int, int]]) -> None:
        nonlocal eid
        edges.append((eid, src, dst, pts))
        eid += 1

    def spine(t: int) -> Tuple[int, int]:
        return (0, SPINE_STEP * t)

    for t in range(m - 1):
        add(t, t + 1, [spine(t), spine(t + 1)])
    for t in range(m - 2):
        apex = (-BULGE, SPINE_STEP * t + SPINE_STEP)
        add(t, t + 2, [spine(t), apex, spine(t + 2)])
    for t in range(m - 3):
        apex = (BULGE, SPINE_STEP * t + 3 * SPINE_STEP // 2)
        add(t, t + 3, [spine(t), apex, spine(t + 3)])
    for k in range(3):
        for t in range(m):
            add(left[k], t, [(-FAN_X, FAN_HEIGHTS[k]), spine(t)])
    for k in range(3):
        for t in range(m):
            add(right[k], t, [(FAN_X, FAN_HEIGHTS[k]), spine(t)])
    mid = (FAN_HEIGHTS[0] + FAN_HEIGHTS[2]) // 2  # bend for the long center pair
    add(left[0], left[1], [(-FAN_X, FAN_HEIGHTS[0]), (-FAN_X, FAN_HEIGHTS[1])])
    add(left[1], left[2], [(-FAN_X, FAN_HEIGHTS[1]), (-FAN_X, FAN_HEIGHTS[2])])
    add(left[0], left[2], [(-FAN_X, FAN_HEIGHTS[0]), (-FAN_X - 6, mid), (-FAN_X, FAN_HEIGHTS[2])])
    add(right[0], right[1], [(FAN_X, FAN_HEIGHTS[0]), (FAN_X, FAN_HEIGHTS[1])])
    add(right[1], right[2], [(FAN_X, FAN_HEIGHTS[1]), (FAN_X, FAN_HEIGHTS[2])])
    add(right[0], right[2], [(FAN_X, FAN_HEIGHTS[0]), (FAN_X + 6, mid), (FAN_X, FAN_HEIGHTS[2])])

    assert eid == 9 * n - 54
    return drawing_from_data(vertices, edges)


def star_complete(n: int, seed: int = 0) -> Drawing:
    """A complete graph on n vertices with one crossing-free star.

    The hub sits below a line of the other n-1 vertices and reaches each by
    a straight spoke; line neighbors are joined along the line; all other
    pairs are staples over the line, with heights ordered by span so any two
    staples meet at most once.  Every crossing pair is therefore joined to
    the hub by two crossing-free edges.  The seed permutes vertex labels
    only.
    """
    if n < STAR_MIN_N:
        raise ValueError(f"n must be at least {STAR_MIN_N}, got {n}")
    if n > STAR_MAX_N:
        raise ValueError(f"n must be at most {STAR_MAX_N}, got {n}")
    rng = random.Random(seed)
    labels = list(range(n))
    rng.shuffle(labels)
    hub = labels[0]
    line = labels[1:]

    step = 4
    count = n - 1
    hub_point = (step * (count - 1) // 2, -8)
    vertices = [(hub, hub_point[0], hub_point[1])]
    for k, lab in enumerate(line):
        vertices.append((lab, step * k, 0))

    edges: List[Tuple[int, int, int, List[Tuple[int, int]]]] = []
    eid = 0

    def add(src, dst, pts):
        nonlocal eid
        edges.append((eid, src, dst, pts))
        eid += 1

    for k, lab in enumerate(line):
        add(hub, lab, [hub_point, (step * k, 0)])
    for k in range(count - 1):
        add(line[k], line[k + 1], [(step * k, 0), (step * (k + 1), 0)])
    chords = [
        (i, j) for i in range(count) for j in range(i + 2, count)
    ]
    chords.sort(key=lambda ij: (ij[1] - ij[0], ij[0], ij[1]))
    for rank, (i, j) in enumerate(chords):
        h = 2 + 2 * rank
        add(
            line[i],
            line[j],
            [(step * i, 0), (step * i + 1, h), (step * j - 1, h), (step * j, 0)],
        )
    return drawing_from_data(vertices, edges)


def random_pcc_greedy(
    n: int, m_target: Optional[int] = None, seed: int = 0
) -> Drawing:
    """Grow a random planarly-connected straight-line drawing greedily.

    Points are sampled in general position on a large grid; candidate edges
    are tried in increasing length (ties by endpoint ids) and added whenever
    the drawing stays valid and planarly connected with independent
    crossings.  Identical seeds give identical drawings.
    """
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")
    rng = random.Random(seed)
    points = _general_position_points(n, rng)

    candidates = []
    for i in range(n):
        for j in range(i + 1, n):
            dx = points[i][0] - points[j][0]
            dy = points[i][1] - points[j][1]
            candidates.append((dx * dx + dy * dy, i, j))
    candidates.sort()

    state = _GreedyState(points)
    limit = m_target if m_target is not None else len(candidates)
    for _, i, j in candidates:
        if len(state.edges) >= limit:
            break
        state.try_add(i, j)

    d = drawing_from_data(
        [(i, x, y) for i, (x, y) in enumerate(points)],
        [(eid, u, v, [points[u], points[v]]) for eid, (u, v) in enumerate(state.edges)],
    )
    report = check_pcc(d, require_independent=True)
    assert report.holds, "greedy produced a non-planarly-connected drawing"
    return d


def _general_position_points(n: int, rng: random.Random) -> List[Tuple[int, int]]:
    span = 1_000_000
    points: List[Tuple[int, int]] = []
    taken = set()
    while len(points) < n:
        p = (rng.randrange(span), rng.randrange(span))
        if p in taken:
            continue
        if any(_collinear(a, b, p) for k, a in enumerate(points) for b in points[k + 1 :]):
            continue
        points.append(p)
        taken.add(p)
    return points


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0


class _GreedyState:
    def __init__(self, points):
        self.points = points
        self.edges: List[Tuple[int, int]] = []
        self.crossings_of: List[int] = []  # crossing count per edge index
        self.pair_connectors: Dict[Tuple[int, int], int] = {}
        self.slot_index: Dict[frozenset, List[Tuple[int, int]]] = {}
        self.planar_pairs: Dict[frozenset, int] = {}  # endpoint pair -> edge index
        self.crossing_points: Dict[Tuple, Tuple[int, int]] = {}

    def _segment(self, u, v) -> Segment:
        return Segment(Point(*self.points[u]), Point(*self.points[v]))

    def try_add(self, u: int, v: int) -> bool:
        seg = self._segment(u, v)
        new_cross: List[Tuple[int, Tuple]] = []
        for idx, (a, b) in enumerate(self.edges):
            if u in (a, b) or v in (a, b):
                continue
            res = classify_segments(seg, self._segment(a, b))
            if res.relation is SegmentRelation.PROPER_CROSSING:
                new_cross.append((idx, res.point))

        batch_points = set()
        for _, pt in new_cross:
            if pt in self.crossing_points or pt in batch_points:
                return False  # coincident crossings
            batch_points.add(pt)

        if not new_cross:
            self._commit_planar(u, v)
            return True

        # Edges losing planarity if we commit.
        losing = [
            idx for idx, _ in new_cross if self.crossings_of[idx] == 0
        ]
        lost_slots = {frozenset(self.edges[idx]) for idx in losing}

        # Existing pairs must survive the lost connectors.
        decrement: Dict[Tuple[int, int], int] = {}
        for slot in lost_slots:
            for pair in self.slot_index.get(slot, ()):
                decrement[pair] = decrement.get(pair, 0) + 1
        for pair, dec in decrement.items():
            if self.pair_connectors[pair] - dec <= 0:
                return False

        # New crossing pairs need a connector that is planar after commit.
        new_idx = len(self.edges)
        new_counts = []
        for idx, _ in new_cross:
            a, b = self.edges[idx]
            cnt = 0
            for x in (u, v):
                for y in (a, b):
                    slot = frozenset((x, y))
                    owner = self.planar_pairs.get(slot)
                    if owner is not None and owner not in losing:
                        cnt += 1
            if cnt == 0:
                return False
            new_counts.append((idx, cnt))

        # Commit.
        for idx, pt in new_cross:
            self.crossing_points[pt] = (idx, new_idx)
            if self.crossings_of[idx] == 0:
                self.planar_pairs.pop(frozenset(self.edges[idx]))
            self.crossings_of[idx] += 1
        for pair, dec in decrement.items():
            self.pair_connectors[pair] -= dec
        for idx, cnt in new_counts:
            a, b = self.edges[idx]
            pair = (idx, new_idx)
            self.pair_connectors[pair] = cnt
            for x in (u, v):
                for y in (a, b):
                    self.slot_index.setdefault(frozenset((x, y)), []).append(pair)
        self.edges.append((u, v))
        self.crossings_of.append(len(new_cross))
        return True

    def _commit_planar(self, u: int, v: int) -> None:
        idx = len(self.edges)
        self.edges.append((u, v))
        self.crossings_of.append(0)
        slot = frozenset((u, v))
        self.planar_pairs[slot] = idx
        for pair in self.slot_index.get(slot, ()):
            self.pair_connectors[pair] += 1


def convex_complete(count: int) -> Drawing:
    """Complete straight-line graph on ``count`` strictly convex points."""
    if count < 3:
        raise ValueError("need at least 3 vertices")
    vertices = [(i, i, i * i) for i in range(count)]
    edges = []
    eid = 0
    for i in range(count):
        for j in range(i + 1, count):
            edges.append((eid, i, j, [(i, i * i), (j, j * j)]))
            eid += 1
    return drawing_from_data(vertices, edges)

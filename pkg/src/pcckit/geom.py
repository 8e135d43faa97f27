"""Exact geometric primitives over integer coordinates.

Everything here is computed in unbounded integer (or rational) arithmetic;
there is no epsilon anywhere.  Orientation signs and segment classifications
are therefore exact, which is what makes the crossing-free / properly-crossing
distinction downstream trustworthy.

Coordinates are capped at ``COORD_BOUND`` so that every determinant formed
from coordinate differences fits comfortably in 128 signed bits (and in
int64 for the vectorized scan when inputs stay below 2**29).
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from .errors import OutOfRangeError

COORD_BOUND = 2**30


class Point(NamedTuple):
    x: int
    y: int


class Segment(NamedTuple):
    a: Point
    b: Point


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class SegmentRelation(enum.Enum):
    DISJOINT = "disjoint"
    PROPER_CROSSING = "proper_crossing"
    ENDPOINT_TOUCH = "endpoint_touch"
    ENDPOINT_ON_INTERIOR = "endpoint_on_interior"
    OVERLAP = "overlap"


class SegmentIntersection(NamedTuple):
    """Classification of a segment pair, with the exact contact point.

    ``point`` is an exact rational pair for every single-point contact and
    ``None`` for DISJOINT and OVERLAP.
    """

    relation: SegmentRelation
    point: Optional[Tuple[Fraction, Fraction]]


def check_point(p: Point) -> Point:
    if not (isinstance(p.x, int) and isinstance(p.y, int)):
        raise OutOfRangeError(f"coordinates must be integers, got {p!r}")
    if abs(p.x) > COORD_BOUND or abs(p.y) > COORD_BOUND:
        raise OutOfRangeError(f"coordinate out of range (|coord| <= 2**30): {p!r}")
    return p


def orient(p: Point, q: Point, r: Point) -> Orientation:
    """Sign of the twice-signed area of triangle pqr, computed exactly."""
    for pt in (p, q, r):
        check_point(pt)
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if d > 0:
        return Orientation.LEFT
    if d < 0:
        return Orientation.RIGHT
    return Orientation.COLLINEAR


def _orient_sign(px, py, qx, qy, rx, ry):
    # Hot-path variant on raw ints; no range re-checks.
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def _on_segment(px, py, qx, qy, rx, ry):
    # q assumed collinear with p-r; is it within the closed box?
    return min(px, rx) <= qx <= max(px, rx) and min(py, ry) <= qy <= max(py, ry)


def crossing_point(s: Segment, t: Segment) -> Tuple[Fraction, Fraction]:
    """Exact intersection point of the supporting lines of s and t.

    Caller guarantees the lines are not parallel.
    """
    ax, ay = s.a
    bx, by = s.b
    cx, cy = t.a
    dx, dy = t.b
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = rx * sy - ry * sx
    num = (cx - ax) * sy - (cy - ay) * sx
    u = Fraction(num, denom)
    return (ax + u * rx, ay + u * ry)


def classify_segments(s: Segment, t: Segment) -> SegmentIntersection:
    """Exact, exhaustive classification of how two segments meet.

    PROPER_CROSSING means the open interiors cross transversally at one
    point.  ENDPOINT_TOUCH means the only contact is a point that is an
    endpoint of both segments.  ENDPOINT_ON_INTERIOR means an endpoint of
    one segment lies in the open interior of the other.  OVERLAP means a
    shared collinear piece of positive length.
    """
    ax, ay = check_point(s.a)
    bx, by = check_point(s.b)
    cx, cy = check_point(t.a)
    dx, dy = check_point(t.b)
    if (ax, ay) == (bx, by) or (cx, cy) == (dx, dy):
        raise ValueError("degenerate segment")

    d1 = _orient_sign(cx, cy, dx, dy, ax, ay)
    d2 = _orient_sign(cx, cy, dx, dy, bx, by)
    d3 = _orient_sign(ax, ay, bx, by, cx, cy)
    d4 = _orient_sign(ax, ay, bx, by, dx, dy)

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        return _classify_collinear(ax, ay, bx, by, cx, cy, dx, dy)

    if d1 * d2 < 0 and d3 * d4 < 0:
        return SegmentIntersection(SegmentRelation.PROPER_CROSSING, crossing_point(s, t))

    shared = None
    if (ax, ay) in ((cx, cy), (dx, dy)):
        shared = (ax, ay)
    elif (bx, by) in ((cx, cy), (dx, dy)):
        shared = (bx, by)
    if shared is not None:
        return SegmentIntersection(
            SegmentRelation.ENDPOINT_TOUCH, (Fraction(shared[0]), Fraction(shared[1]))
        )

    # A zero orientation with the point inside the other segment's box is a
    # one-sided endpoint contact.
    for d, (px, py), (ux, uy, vx, vy) in (
        (d1, (ax, ay), (cx, cy, dx, dy)),
        (d2, (bx, by), (cx, cy, dx, dy)),
        (d3, (cx, cy), (ax, ay, bx, by)),
        (d4, (dx, dy), (ax, ay, bx, by)),
    ):
        if d == 0 and _on_segment(ux, uy, px, py, vx, vy):
            return SegmentIntersection(
                SegmentRelation.ENDPOINT_ON_INTERIOR, (Fraction(px), Fraction(py))
            )

    return SegmentIntersection(SegmentRelation.DISJOINT, None)


def classify_raw(ax, ay, bx, by, cx, cy, dx, dy):
    """Hot-path classification on raw ints.

    Returns (relation, key) where key is a canonical integer 4-tuple
    (x_num, x_den, y_num, y_den) of the contact point, or None for
    DISJOINT/OVERLAP.  Range checks are the caller's responsibility.
    """
    dxt = dx - cx
    dyt = dy - cy
    d1 = dxt * (ay - cy) - dyt * (ax - cx)
    d2 = dxt * (by - cy) - dyt * (bx - cx)
    dxs = bx - ax
    dys = by - ay
    d3 = dxs * (cy - ay) - dys * (cx - ax)
    d4 = dxs * (dy - ay) - dys * (dx - ax)

    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        res = _classify_collinear(ax, ay, bx, by, cx, cy, dx, dy)
        if res.relation is SegmentRelation.ENDPOINT_TOUCH:
            return res.relation, (int(res.point[0]), 1, int(res.point[1]), 1)
        return res.relation, None

    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0) and (
        (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0
    ):
        den = dxs * dyt - dys * dxt
        num = (cx - ax) * dyt - (cy - ay) * dxt
        return SegmentRelation.PROPER_CROSSING, _ratio_key(
            ax * den + num * dxs, ay * den + num * dys, den
        )

    if (ax, ay) in ((cx, cy), (dx, dy)) or (bx, by) in ((cx, cy), (dx, dy)):
        shared = (ax, ay) if (ax, ay) in ((cx, cy), (dx, dy)) else (bx, by)
        return SegmentRelation.ENDPOINT_TOUCH, (shared[0], 1, shared[1], 1)

    for d, px, py, ux, uy, vx, vy in (
        (d1, ax, ay, cx, cy, dx, dy),
        (d2, bx, by, cx, cy, dx, dy),
        (d3, cx, cy, ax, ay, bx, by),
        (d4, dx, dy, ax, ay, bx, by),
    ):
        if d == 0 and _on_segment(ux, uy, px, py, vx, vy):
            return SegmentRelation.ENDPOINT_ON_INTERIOR, (px, 1, py, 1)

    return SegmentRelation.DISJOINT, None


def _ratio_key(xn, yn, den):
    import math

    if den < 0:
        xn, yn, den = -xn, -yn, -den
    gx = math.gcd(xn, den)
    gy = math.gcd(yn, den)
    return (xn // gx, den // gx, yn // gy, den // gy)


def key_to_fractions(key) -> Tuple[Fraction, Fraction]:
    xn, xd, yn, yd = key
    x = Fraction(xn, xd)
    y = Fraction(yn, yd)
    return (x, y)


def _classify_collinear(ax, ay, bx, by, cx, cy, dx, dy):
    # Project on the dominant axis of the common line.
    if ax != bx:
        s_lo, s_hi = sorted((ax, bx))
        t_lo, t_hi = sorted((cx, dx))
        axis = 0
    else:
        s_lo, s_hi = sorted((ay, by))
        t_lo, t_hi = sorted((cy, dy))
        axis = 1
    lo = max(s_lo, t_lo)
    hi = min(s_hi, t_hi)
    if lo > hi:
        return SegmentIntersection(SegmentRelation.DISJOINT, None)
    if lo < hi:
        return SegmentIntersection(SegmentRelation.OVERLAP, None)
    # Single shared point; it is an endpoint of both segments.
    if axis == 0:
        px = lo
        py = ay if ax == lo else by
    else:
        py = lo
        px = ax if ay == lo else bx
    return SegmentIntersection(SegmentRelation.ENDPOINT_TOUCH, (Fraction(px), Fraction(py)))

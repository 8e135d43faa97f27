"""Candidate discovery for the all-pairs segment classification.

The exact classification itself always runs in unbounded-precision Python.
What this module vectorizes is the *discovery* of segment pairs that can
possibly interact: pairs whose orientation signs admit a proper crossing,
and pairs with a zero orientation inside overlapping bounding boxes.  Signs
are computed in int64, which is exact as long as every coordinate stays at
or below 2**29 in magnitude; beyond that the pure-Python path takes over.

Returned candidate sets are supersets of the true contact pairs, so the
downstream exact pass decides everything.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

import numpy as np

# Products of coordinate differences stay below 2**62 for |coord| <= 2**29,
# so the sign determinant cannot overflow int64.
NUMPY_SAFE_BOUND = 2**29

_CHUNK_ROWS = 512


def segment_pair_candidates(
    segs: Sequence[Tuple[int, int, int, int]],
    max_abs_coord: int,
    threads: int = 1,
) -> List[Tuple[int, int]]:
    """Indices (i, j), i < j, of segment pairs that may touch or cross."""
    n = len(segs)
    if n < 2:
        return []
    if max_abs_coord > NUMPY_SAFE_BOUND:
        return _candidates_python(segs)
    return _candidates_numpy(segs, threads)


def _candidates_python(segs) -> List[Tuple[int, int]]:
    out = []
    n = len(segs)
    boxes = []
    for x1, y1, x2, y2 in segs:
        boxes.append((min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2)))
    for i in range(n):
        ix0, iy0, ix1, iy1 = boxes[i]
        for j in range(i + 1, n):
            jx0, jy0, jx1, jy1 = boxes[j]
            if ix0 <= jx1 and jx0 <= ix1 and iy0 <= jy1 and jy0 <= iy1:
                out.append((i, j))
    return out


def _sign_block(ax1, ay1, ax2, ay2, bx1, by1, bx2, by2):
    # Orientation signs of each endpoint of one family against the other
    # family's supporting line, broadcast rows x cols.
    dxb = bx2 - bx1
    dyb = by2 - by1
    d1 = dxb * (ay1 - by1) - dyb * (ax1 - bx1)
    d2 = dxb * (ay2 - by1) - dyb * (ax2 - bx1)
    dxa = ax2 - ax1
    dya = ay2 - ay1
    d3 = dxa * (by1 - ay1) - dya * (bx1 - ax1)
    d4 = dxa * (by2 - ay1) - dya * (bx2 - ax1)
    s1 = np.sign(d1).astype(np.int8)
    s2 = np.sign(d2).astype(np.int8)
    s3 = np.sign(d3).astype(np.int8)
    s4 = np.sign(d4).astype(np.int8)
    return s1, s2, s3, s4


def _candidates_numpy(segs, threads: int) -> List[Tuple[int, int]]:
    n = len(segs)
    arr = np.asarray(segs, dtype=np.int64)
    x1, y1, x2, y2 = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    minx = np.minimum(x1, x2)
    maxx = np.maximum(x1, x2)
    miny = np.minimum(y1, y2)
    maxy = np.maximum(y1, y2)

    col_idx = np.arange(n)

    def scan_rows(r0: int, r1: int) -> List[Tuple[int, int]]:
        rows = slice(r0, r1)
        s1, s2, s3, s4 = _sign_block(
            x1[rows, None], y1[rows, None], x2[rows, None], y2[rows, None],
            x1[None, :], y1[None, :], x2[None, :], y2[None, :],
        )
        proper = (s1 * s2 < 0) & (s3 * s4 < 0)
        anyzero = (s1 == 0) | (s2 == 0) | (s3 == 0) | (s4 == 0)
        boxes = (
            (minx[rows, None] <= maxx[None, :])
            & (minx[None, :] <= maxx[rows, None])
            & (miny[rows, None] <= maxy[None, :])
            & (miny[None, :] <= maxy[rows, None])
        )
        mask = (proper | (anyzero & boxes)) & (col_idx[None, :] > col_idx[rows, None])
        ii, jj = np.nonzero(mask)
        ii = ii + r0
        return list(zip(ii.tolist(), jj.tolist()))

    blocks = [(r, min(r + _CHUNK_ROWS, n)) for r in range(0, n, _CHUNK_ROWS)]
    if threads > 1 and len(blocks) > 1:
        from concurrent.futures import ThreadPoolExecutor

        try:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda b: scan_rows(*b), blocks))
        except (OSError, RuntimeError):
            parts = [scan_rows(r0, r1) for r0, r1 in blocks]
    else:
        parts = [scan_rows(r0, r1) for r0, r1 in blocks]

    out: List[Tuple[int, int]] = []
    for part in parts:
        out.extend(part)
    return out


def vertex_on_segment_candidates(
    points: Sequence[Tuple[int, int]],
    segs: Sequence[Tuple[int, int, int, int]],
    max_abs_coord: int,
) -> Iterable[Tuple[int, int]]:
    """Indices (vertex, segment) where the point lies on the closed segment."""
    if not points or not segs:
        return []
    if max_abs_coord > NUMPY_SAFE_BOUND:
        from .geom import _on_segment, _orient_sign

        out = []
        for vi, (px, py) in enumerate(points):
            for si, (x1, y1, x2, y2) in enumerate(segs):
                if _orient_sign(x1, y1, x2, y2, px, py) == 0 and _on_segment(
                    x1, y1, px, py, x2, y2
                ):
                    out.append((vi, si))
        return out

    pts = np.asarray(points, dtype=np.int64)
    arr = np.asarray(segs, dtype=np.int64)
    x1, y1, x2, y2 = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    px = pts[:, 0][:, None]
    py = pts[:, 1][:, None]
    cross = (x2 - x1)[None, :] * (py - y1[None, :]) - (y2 - y1)[None, :] * (px - x1[None, :])
    inbox = (
        (np.minimum(x1, x2)[None, :] <= px)
        & (px <= np.maximum(x1, x2)[None, :])
        & (np.minimum(y1, y2)[None, :] <= py)
        & (py <= np.maximum(y1, y2)[None, :])
    )
    vi, si = np.nonzero((cross == 0) & inbox)
    return list(zip(vi.tolist(), si.tolist()))

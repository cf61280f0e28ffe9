"""Exact integer predicates for planar point/segment work.

All inputs are lattice points, so Python's big integers make every predicate
exact; no epsilon anywhere.
"""

from __future__ import annotations


def orient(ax: int, ay: int, bx: int, by: int, cx: int, cy: int) -> int:
    """Sign of the cross product (b-a) x (c-a): 1 left turn, -1 right, 0 collinear."""
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def in_circle(a, b, c, d) -> int:
    """Sign test: d inside (+1) / on (0) / outside (-1) the circumcircle of
    counterclockwise triangle a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
        - (bdx * bdx + bdy * bdy) * (adx * cdy - ady * cdx)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
    )
    return (det > 0) - (det < 0)


def strictly_between(a, b, p) -> bool:
    """p lies in the open interior of segment ab (collinear and inside)."""
    if orient(a[0], a[1], b[0], b[1], p[0], p[1]) != 0:
        return False
    if p == a or p == b:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def proper_cross(a, b, c, d) -> bool:
    """Open segments ab and cd share an interior point, non-collinearly."""
    o1 = orient(a[0], a[1], b[0], b[1], c[0], c[1])
    o2 = orient(a[0], a[1], b[0], b[1], d[0], d[1])
    o3 = orient(c[0], c[1], d[0], d[1], a[0], a[1])
    o4 = orient(c[0], c[1], d[0], d[1], b[0], b[1])
    return o1 * o2 < 0 and o3 * o4 < 0


def delaunay_edges(points: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Delaunay edges by the empty-circumcircle triangle test.

    Assumes general position (no 3 collinear, no 4 cocircular); O(n^4), meant
    for small point sets.
    """
    n = len(points)
    edges: set[tuple[int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = points[i], points[j], points[k]
                if orient(a[0], a[1], b[0], b[1], c[0], c[1]) < 0:
                    b, c = c, b  # force counterclockwise
                empty = True
                for m in range(n):
                    if m in (i, j, k):
                        continue
                    if in_circle(a, b, c, points[m]) > 0:
                        empty = False
                        break
                if empty:
                    edges.add((i, j))
                    edges.add((i, k))
                    edges.add((j, k))
    return tuple(sorted(edges))


def any_collinear_triple(points: list[tuple[int, int]]) -> bool:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = points[i], points[j], points[k]
                if orient(a[0], a[1], b[0], b[1], c[0], c[1]) == 0:
                    return True
    return False


def any_cocircular_quad(points: list[tuple[int, int]]) -> bool:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = points[i], points[j], points[k]
                if orient(a[0], a[1], b[0], b[1], c[0], c[1]) < 0:
                    b, c = c, b
                for m in range(n):
                    if m in (i, j, k):
                        continue
                    if in_circle(a, b, c, points[m]) == 0:
                        return True
    return False

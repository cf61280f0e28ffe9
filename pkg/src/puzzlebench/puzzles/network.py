"""Shared machinery for the network puzzles and the frame cursor.

Tiles carry a 4-bit connection mask (bit d set = link toward direction d,
directions 0=up, 1=right, 2=down, 3=left). Solved means every link is
mutual, none points off-grid, and the linked tiles form one component.

Netslide and Sixteen share a cursor that rides the one-cell frame around
the grid (coordinates on the -1..w / -1..h border), visiting exactly the
cells that face a row or column.
"""

from __future__ import annotations

from ..rng import Rng

DIRS = ((0, -1), (1, 0), (0, 1), (-1, 0))  # up, right, down, left
OPPOSITE = (2, 3, 0, 1)


def rotate_mask_cw(mask: int) -> int:
    """Quarter turn clockwise: link toward d moves to (d+1) mod 4."""
    return ((mask << 1) | (mask >> 3)) & 0xF


def uniform_spanning_tree(w: int, h: int, rng: Rng) -> tuple[int, ...]:
    """Wilson's algorithm on the w x h grid graph; returns tile link masks."""
    n = w * h
    in_tree = [False] * n
    masks = [0] * n
    root = rng.below(n)
    in_tree[root] = True
    remaining = [i for i in range(n) if i != root]
    # Loop-erased random walks from every remaining vertex.
    for start in remaining:
        if in_tree[start]:
            continue
        path = [start]
        pos = {start: 0}
        cur = start
        while not in_tree[cur]:
            x, y = cur % w, cur // w
            options = [
                d
                for d, (dx, dy) in enumerate(DIRS)
                if 0 <= x + dx < w and 0 <= y + dy < h
            ]
            d = options[rng.below(len(options))]
            dx, dy = DIRS[d]
            cur = (y + dy) * w + (x + dx)
            if cur in pos:
                # erase the loop
                cut = pos[cur] + 1
                for v in path[cut:]:
                    del pos[v]
                del path[cut:]
            else:
                pos[cur] = len(path)
                path.append(cur)
        for a, b in zip(path, path[1:]):
            ax, ay = a % w, a // w
            bx, by = b % w, b // w
            d = DIRS.index((bx - ax, by - ay))
            masks[a] |= 1 << d
            masks[b] |= 1 << OPPOSITE[d]
            in_tree[a] = True
        in_tree[path[-1]] = True
    return tuple(masks)


def network_solved(tiles: tuple[int, ...], w: int, h: int) -> bool:
    """Mutual links everywhere, none off-grid, single connected component."""
    n = w * h
    for i, mask in enumerate(tiles):
        x, y = i % w, i // w
        for d, (dx, dy) in enumerate(DIRS):
            if not mask & (1 << d):
                continue
            nx, ny = x + dx, y + dy
            if not (0 <= nx < w and 0 <= ny < h):
                return False
            if not tiles[ny * w + nx] & (1 << OPPOSITE[d]):
                return False
    # All links mutual; walk the link graph from tile 0.
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        x, y = i % w, i // w
        for d, (dx, dy) in enumerate(DIRS):
            if tiles[i] & (1 << d):
                j = (y + dy) * w + (x + dx)
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == n


# -- frame cursor ----------------------------------------------------------
#
# The cursor rides the ring of lane-facing frame cells (corner cells are
# skipped in transit). On each edge the two arrows parallel to the edge move
# the cursor one ring position, turning corners cyclically; the
# perpendicular arrows are no-ops.

_RING_CACHE: dict[tuple[int, int], tuple[list, dict]] = {}


def ring_cells(w: int, h: int) -> tuple[list, dict]:
    """Cyclic ring order (clockwise from the top-left) and index lookup."""
    try:
        return _RING_CACHE[(w, h)]
    except KeyError:
        cells = (
            [(x, -1) for x in range(w)]
            + [(w, y) for y in range(h)]
            + [(x, h) for x in range(w - 1, -1, -1)]
            + [(-1, y) for y in range(h - 1, -1, -1)]
        )
        index = {c: i for i, c in enumerate(cells)}
        _RING_CACHE[(w, h)] = (cells, index)
        return cells, index


def frame_move(
    cursor: tuple[int, int], action_name: str, w: int, h: int
) -> tuple[int, int] | None:
    x, y = cursor
    if y == -1:
        diff = 1 if action_name == "RIGHT" else -1 if action_name == "LEFT" else None
    elif x == w:
        diff = 1 if action_name == "DOWN" else -1 if action_name == "UP" else None
    elif y == h:
        diff = 1 if action_name == "LEFT" else -1 if action_name == "RIGHT" else None
    else:
        diff = 1 if action_name == "UP" else -1 if action_name == "DOWN" else None
    if diff is None:
        return None
    cells, index = ring_cells(w, h)
    return cells[(index[cursor] + diff) % len(cells)]


def faced_lane(cursor: tuple[int, int], w: int, h: int):
    """(kind, index, direction) for the row/column the cursor pushes.
    direction +1 pushes away from the cursor, into the grid."""
    x, y = cursor
    if x == -1 and 0 <= y < h:
        return ("row", y, 1)
    if x == w and 0 <= y < h:
        return ("row", y, -1)
    if y == -1 and 0 <= x < w:
        return ("col", x, 1)
    if y == h and 0 <= x < w:
        return ("col", x, -1)
    return None


def slide_lane(
    tiles: tuple[int, ...], w: int, h: int, kind: str, index: int, direction: int
) -> tuple[int, ...]:
    """Cyclically shift a row (or column) one cell; +1 moves toward higher
    coordinates, so the wrapped-off cell re-enters at the pushed end."""
    out = list(tiles)
    if kind == "row":
        cells = [index * w + x for x in range(w)]
    else:
        cells = [y * w + index for y in range(h)]
    values = [tiles[c] for c in cells]
    if direction == 1:
        values = values[-1:] + values[:-1]
    else:
        values = values[1:] + values[:1]
    for c, v in zip(cells, values):
        out[c] = v
    return tuple(out)

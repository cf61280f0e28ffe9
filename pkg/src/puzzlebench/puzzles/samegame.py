"""Same Game: clear the grid by removing touching groups of same-colour squares.

SELECT removes the group under the cursor when it meets the minimum size;
tiles above fall and empty columns close to the left. UNDO reverts the last
removal including gravity. Boards are rejection-sampled until the exhaustive
solver certifies the whole grid can be cleared.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from ..drawing import DrawList, game_color
from ..params import ParamMap
from ..rng import Rng
from .base import (
    SELECT,
    UNDO,
    GENERATION_RETRIES,
    GenerationFailure,
    OracleBudgetExceeded,
    Puzzle,
    Status,
    make_obs,
    move_cursor_clamped,
)


@dataclass(frozen=True)
class SameGameState:
    width: int
    height: int
    colors: int
    group_min: int
    grid: tuple[int, ...]  # 0 = empty, else color 1..colors
    cursor: tuple[int, int]
    undo_stack: tuple[tuple[int, ...], ...] = ()  # boards before each removal
    move_count: int = 0


def _group_at(grid: tuple[int, ...], w: int, h: int, start: int) -> tuple[int, ...]:
    color = grid[start]
    if color == 0:
        return ()
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        x, y = i % w, i // w
        for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
            if 0 <= nx < w and 0 <= ny < h:
                j = ny * w + nx
                if j not in seen and grid[j] == color:
                    seen.add(j)
                    stack.append(j)
    return tuple(sorted(seen))


def _apply_gravity(grid: list[int], w: int, h: int) -> list[int]:
    # Tiles fall to the bottom of their column.
    cols: list[list[int]] = []
    for x in range(w):
        col = [grid[y * w + x] for y in range(h) if grid[y * w + x] != 0]
        cols.append(col)
    # Empty columns close toward the left.
    cols = [c for c in cols if c] + [[] for c in cols if not c]
    out = [0] * (w * h)
    for x, col in enumerate(cols):
        for k, color in enumerate(col):
            y = h - len(col) + k
            out[y * w + x] = color
    return out


def _groups(grid: tuple[int, ...], w: int, h: int, at_least: int):
    seen: set[int] = set()
    for i in range(w * h):
        if grid[i] == 0 or i in seen:
            continue
        group = _group_at(grid, w, h, i)
        seen.update(group)
        if len(group) >= at_least:
            yield group


def _remove(grid: tuple[int, ...], w: int, h: int, group: tuple[int, ...]):
    nxt = list(grid)
    for i in group:
        nxt[i] = 0
    return tuple(_apply_gravity(nxt, w, h))


@lru_cache(maxsize=1 << 18)
def _clearable(grid: tuple[int, ...], w: int, h: int, group_min: int) -> bool:
    """Exhaustive memoized search for a full clearance."""
    if not any(grid):
        return True
    # A color with fewer cells than group_min can never be removed.
    counts: dict[int, int] = {}
    for c in grid:
        if c:
            counts[c] = counts.get(c, 0) + 1
    if any(v < group_min for v in counts.values()):
        return False
    for group in _groups(grid, w, h, group_min):
        if _clearable(_remove(grid, w, h, group), w, h, group_min):
            return True
    return False


class SameGame(Puzzle):
    id = "samegame"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT, UNDO)

    def generate(self, params: ParamMap, rng: Rng) -> SameGameState:
        w, h, colors = params.width, params.height, params.colors
        for _ in range(GENERATION_RETRIES):
            grid = tuple(1 + rng.below(colors) for _ in range(w * h))
            if _clearable(grid, w, h, params.group_min):
                return SameGameState(
                    w, h, colors, params.group_min, grid, (0, 0)
                )
        raise GenerationFailure("samegame: no clearable board in budget")

    def transition(self, state: SameGameState, action: int):
        name = self.action_names[action]
        w, h = state.width, state.height
        if name == SELECT:
            i = state.cursor[1] * w + state.cursor[0]
            group = _group_at(state.grid, w, h, i)
            if len(group) < state.group_min:
                return state, False
            grid = _remove(state.grid, w, h, group)
            return (
                replace(
                    state,
                    grid=grid,
                    undo_stack=state.undo_stack + (state.grid,),
                    move_count=state.move_count + 1,
                ),
                True,
            )
        if name == UNDO:
            if not state.undo_stack:
                return state, False
            return (
                replace(
                    state,
                    grid=state.undo_stack[-1],
                    undo_stack=state.undo_stack[:-1],
                    move_count=state.move_count + 1,
                ),
                True,
            )
        cursor, moved = move_cursor_clamped(state.cursor, name, w, h)
        if not moved:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: SameGameState):
        x, y = state.cursor
        w, h = state.width, state.height
        group = _group_at(state.grid, w, h, y * w + x)
        return np.array(
            [
                y > 0,
                y + 1 < h,
                x > 0,
                x + 1 < w,
                len(group) >= state.group_min,
                bool(state.undo_stack),
            ],
            dtype=bool,
        )

    def status(self, state: SameGameState) -> Status:
        if not any(state.grid):
            return Status.SOLVED
        has_group = any(
            True
            for _ in _groups(
                state.grid, state.width, state.height, state.group_min
            )
        )
        if not has_group and not state.undo_stack:
            return Status.FAILED
        return Status.IN_PROGRESS

    def encode(self, state: SameGameState):
        return make_obs(
            colors=state.colors,
            cursor_pos=list(state.cursor),
            grid=list(state.grid),
            group_min=state.group_min,
            height=state.height,
            move_count=state.move_count,
            undo_depth=len(state.undo_stack),
            width=state.width,
        )

    def repetition_fields(self, state: SameGameState) -> tuple:
        return (state.grid, state.cursor)

    def verify_solvable(self, state: SameGameState, max_cells: int = 25) -> bool:
        """The board (or any board on the undo stack) admits a full clearance."""
        if state.width * state.height > max_cells:
            raise OracleBudgetExceeded("samegame oracle limited to 5x5 boards")
        boards = (state.grid,) + state.undo_stack
        return any(
            _clearable(b, state.width, state.height, state.group_min)
            for b in boards
        )

    def render(self, state: SameGameState) -> DrawList:
        dl = DrawList(state.width, state.height)
        dl.rect(0, 0, state.width, state.height, 2)
        for i, c in enumerate(state.grid):
            if c == 0:
                continue
            x, y = i % state.width, i // state.width
            dl.rect(x + 0.04, y + 0.04, 0.92, 0.92, game_color(c))
        cx, cy = state.cursor
        dl.rect(cx + 0.02, cy + 0.02, 0.96, 0.06, 12)
        dl.rect(cx + 0.02, cy + 0.92, 0.96, 0.06, 12)
        return dl

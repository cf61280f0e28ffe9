"""Flood: turn the grid the same colour in as few flood fills as possible.

SELECT recolors the connected region containing the top-left cell to the
color under the cursor. The move budget is the minimal solution length at
generation time plus the configured slack; running out with a multicolored
board is an irreversible failure.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList, game_color
from ..params import ParamMap
from ..rng import Rng
from .base import (
    SELECT,
    GenerationFailure,
    Puzzle,
    Status,
    make_obs,
    move_cursor_clamped,
)


@dataclass(frozen=True)
class FloodState:
    width: int
    height: int
    colors: int
    grid: tuple[int, ...]  # colors 1..colors
    cursor: tuple[int, int]
    moves_left: int
    move_count: int = 0


def flood_region(grid: tuple[int, ...], w: int, h: int) -> list[int]:
    """Cell indices of the connected same-color component at the top-left."""
    target = grid[0]
    seen = [False] * (w * h)
    seen[0] = True
    stack = [0]
    out = []
    while stack:
        i = stack.pop()
        out.append(i)
        x, y = i % w, i // w
        for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
            if 0 <= nx < w and 0 <= ny < h:
                j = ny * w + nx
                if not seen[j] and grid[j] == target:
                    seen[j] = True
                    stack.append(j)
    return out


def _apply_fill(grid: tuple[int, ...], w: int, h: int, color: int) -> tuple[int, ...]:
    region = flood_region(grid, w, h)
    out = list(grid)
    for i in region:
        out[i] = color
    return tuple(out)


def min_fill_moves(
    grid: tuple[int, ...], w: int, h: int, node_budget: int = 200_000
) -> int:
    """Minimal number of fills to make the board monochrome.

    Iterative-deepening DFS. Only colors adjacent to the region are tried
    (an optimal solution never recolors to a non-adjacent color), and the
    bound uses the admissible heuristic distinct-colors-remaining - 1.
    Exact search is exponential; past node_budget the board is declared
    intractable rather than hanging.
    """
    nodes = 0

    def heuristic(g: tuple[int, ...]) -> int:
        return len(set(g)) - 1

    def adjacent_colors(g: tuple[int, ...]) -> set[int]:
        region = set(flood_region(g, w, h))
        target = g[next(iter(region))]
        out = set()
        for i in region:
            x, y = i % w, i // w
            for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                if 0 <= nx < w and 0 <= ny < h:
                    c = g[ny * w + nx]
                    if c != target:
                        out.add(c)
        return out

    def dfs(g: tuple[int, ...], depth: int, visited: dict) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise GenerationFailure(
                f"flood {w}x{h}: minimal-fill search past {node_budget} search nodes"
            )
        need = heuristic(g)
        if need == 0:
            return True
        if need > depth:
            return False
        if visited.get(g, -1) >= depth:
            return False
        visited[g] = depth
        for c in sorted(adjacent_colors(g)):
            if dfs(_apply_fill(g, w, h, c), depth - 1, visited):
                return True
        return False

    depth = heuristic(grid)
    while True:
        if dfs(grid, depth, {}):
            return depth
        depth += 1


class Flood(Puzzle):
    id = "flood"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT)

    def generate(self, params: ParamMap, rng: Rng) -> FloodState:
        w, h, colors = params.width, params.height, params.colors
        grid = tuple(1 + rng.below(colors) for _ in range(w * h))
        budget = min_fill_moves(grid, w, h) + params.extra_moves
        return FloodState(w, h, colors, grid, (0, 0), budget)

    def transition(self, state: FloodState, action: int):
        name = self.action_names[action]
        if name == SELECT:
            if state.moves_left <= 0:
                return state, False
            picked = state.grid[state.cursor[1] * state.width + state.cursor[0]]
            if picked == state.grid[0]:
                return state, False
            grid = _apply_fill(state.grid, state.width, state.height, picked)
            return (
                replace(
                    state,
                    grid=grid,
                    moves_left=state.moves_left - 1,
                    move_count=state.move_count + 1,
                ),
                True,
            )
        cursor, moved = move_cursor_clamped(
            state.cursor, name, state.width, state.height
        )
        if not moved:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: FloodState):
        x, y = state.cursor
        w, h = state.width, state.height
        sel = (
            state.moves_left > 0
            and state.grid[y * w + x] != state.grid[0]
        )
        return np.array([y > 0, y + 1 < h, x > 0, x + 1 < w, sel], dtype=bool)

    def status(self, state: FloodState) -> Status:
        if all(c == state.grid[0] for c in state.grid):
            return Status.SOLVED
        if state.moves_left <= 0:
            return Status.FAILED
        return Status.IN_PROGRESS

    def encode(self, state: FloodState):
        return make_obs(
            colors=state.colors,
            cursor_pos=list(state.cursor),
            grid=list(state.grid),
            height=state.height,
            move_count=state.move_count,
            moves_left=state.moves_left,
            width=state.width,
        )

    def repetition_fields(self, state: FloodState) -> tuple:
        return (state.grid, state.cursor, state.moves_left)

    def verify_solvable(self, state: FloodState) -> bool:
        if all(c == state.grid[0] for c in state.grid):
            return True
        return (
            min_fill_moves(state.grid, state.width, state.height)
            <= state.moves_left
        )

    def render(self, state: FloodState) -> DrawList:
        dl = DrawList(state.width, state.height + 0.5)
        for i, c in enumerate(state.grid):
            x, y = i % state.width, i // state.width
            dl.rect(x, y, 1, 1, game_color(c))
        cx, cy = state.cursor
        dl.rect(cx + 0.35, cy + 0.35, 0.3, 0.3, 2)
        # Budget bar along the bottom edge.
        if state.moves_left > 0:
            dl.rect(0, state.height + 0.1, min(state.moves_left, state.width * 4) / 4.0, 0.3, 12)
        return dl

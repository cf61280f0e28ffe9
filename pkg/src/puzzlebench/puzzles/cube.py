"""Cube: pick up all the blue squares by rolling the cube over them.

A cube sits on a w x h grid holding 6 blue cells. Arrows roll it one cell
(no-op at the border). After a roll, the bottom face and the landing cell
swap blue-ness when exactly one of them is blue. All six faces blue wins.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    OracleBudgetExceeded,
    Puzzle,
    Status,
    make_obs,
)

N_BLUE = 6

# Face order: (top, bottom, north, south, east, west).
# Rolling permutes the face tuple; grid north is -y (UP).
def _roll(faces: tuple[int, ...], direction: str) -> tuple[int, ...]:
    t, b, n, s, e, w = faces
    if direction == UP:  # tips over its north edge
        return (s, n, t, b, e, w)
    if direction == DOWN:
        return (n, s, b, t, e, w)
    if direction == LEFT:
        return (e, w, n, s, b, t)
    if direction == RIGHT:
        return (w, e, n, s, t, b)
    raise ValueError(direction)


@dataclass(frozen=True)
class CubeState:
    width: int
    height: int
    grid: tuple[int, ...]  # 1 = blue cell
    cube: tuple[int, int]
    faces: tuple[int, ...]  # blue-ness of (top, bottom, n, s, e, w)
    move_count: int = 0


_DELTAS = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0)}


class Cube(Puzzle):
    id = "cube"
    action_names = (UP, DOWN, LEFT, RIGHT)

    def generate(self, params: ParamMap, rng: Rng) -> CubeState:
        w, h = params.width, params.height
        blues = rng.sample_indices(w * h, N_BLUE)
        grid = [0] * (w * h)
        for i in blues:
            grid[i] = 1
        free = [i for i in range(w * h) if not grid[i]]
        start = free[rng.below(len(free))]
        return CubeState(
            w, h, tuple(grid), (start % w, start // w), (0,) * 6
        )

    def _rolled(self, state: CubeState, action: int) -> CubeState | None:
        name = self.action_names[action]
        dx, dy = _DELTAS[name]
        nx, ny = state.cube[0] + dx, state.cube[1] + dy
        if not (0 <= nx < state.width and 0 <= ny < state.height):
            return None
        faces = list(_roll(state.faces, name))
        grid = state.grid
        cell = ny * state.width + nx
        if faces[1] != grid[cell]:
            g = list(grid)
            faces[1], g[cell] = g[cell], faces[1]
            grid = tuple(g)
        return replace(
            state,
            grid=grid,
            cube=(nx, ny),
            faces=tuple(faces),
            move_count=state.move_count + 1,
        )

    def transition(self, state: CubeState, action: int):
        nxt = self._rolled(state, action)
        if nxt is None:
            return state, False
        return nxt, True

    def action_mask(self, state: CubeState):
        x, y = state.cube
        w, h = state.width, state.height
        return np.array([y > 0, y + 1 < h, x > 0, x + 1 < w], dtype=bool)

    def status(self, state: CubeState) -> Status:
        if all(state.faces):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: CubeState):
        return make_obs(
            cube_pos=list(state.cube),
            faces=list(state.faces),
            grid=list(state.grid),
            height=state.height,
            move_count=state.move_count,
            width=state.width,
        )

    def repetition_fields(self, state: CubeState) -> tuple:
        return (state.grid, state.cube, state.faces)

    def verify_solvable(self, state: CubeState, budget: int = 2_000_000) -> bool:
        """Breadth-first search over (grid, position, faces) until a state
        with all faces blue appears."""
        start = (state.grid, state.cube, state.faces)
        seen = {start}
        queue = deque([start])
        expanded = 0
        while queue:
            grid, cube, faces = queue.popleft()
            if all(faces):
                return True
            expanded += 1
            if expanded > budget:
                raise OracleBudgetExceeded("cube solvability search budget")
            probe = CubeState(state.width, state.height, grid, cube, faces)
            for a in range(4):
                nxt = self._rolled(probe, a)
                if nxt is None:
                    continue
                key = (nxt.grid, nxt.cube, nxt.faces)
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
        return False

    def render(self, state: CubeState) -> DrawList:
        dl = DrawList(state.width, state.height)
        for i, blue in enumerate(state.grid):
            x, y = i % state.width, i // state.width
            dl.rect(x + 0.02, y + 0.02, 0.96, 0.96, 5 if blue else 11)
        cx, cy = state.cube
        dl.rect(cx + 0.15, cy + 0.15, 0.7, 0.7, 1)
        # Face indicators: top face large, the four side faces as pips.
        if state.faces[0]:
            dl.rect(cx + 0.35, cy + 0.35, 0.3, 0.3, 5)
        pip = {2: (0.45, 0.18), 3: (0.45, 0.72), 4: (0.72, 0.45), 5: (0.18, 0.45)}
        for f, (px, py) in pip.items():
            if state.faces[f]:
                dl.rect(cx + px, cy + py, 0.1, 0.1, 5)
        if state.faces[1]:
            dl.rect(cx + 0.18, cy + 0.18, 0.1, 0.1, 5)
        return dl

"""Flip: flip groups of squares to light them all up at once.

Pressing a cell toggles it and its orthogonal neighbors (cross pattern, no
wrap). Instances come from applying an independent fair-coin press to every
cell of the all-lit board; replaying the recorded presses solves the board.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import SELECT, Puzzle, Status, make_obs, move_cursor_clamped


@dataclass(frozen=True)
class FlipState:
    width: int
    height: int
    grid: tuple[int, ...]  # 1 = lit
    cursor: tuple[int, int]
    move_count: int = 0
    press_witness: tuple[int, ...] = ()  # cells whose press solves the board


def _press(grid: list[int], w: int, h: int, x: int, y: int) -> None:
    for dx, dy in ((0, 0), (0, -1), (0, 1), (-1, 0), (1, 0)):
        nx, ny = x + dx, y + dy
        if 0 <= nx < w and 0 <= ny < h:
            i = ny * w + nx
            grid[i] ^= 1


class Flip(Puzzle):
    id = "flip"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT)

    def generate(self, params: ParamMap, rng: Rng) -> FlipState:
        w, h = params.width, params.height
        grid = [1] * (w * h)
        presses = []
        for i in range(w * h):
            if rng.coin():
                presses.append(i)
                _press(grid, w, h, i % w, i // w)
        return FlipState(w, h, tuple(grid), (0, 0), 0, tuple(presses))

    def transition(self, state: FlipState, action: int):
        name = self.action_names[action]
        if name == SELECT:
            grid = list(state.grid)
            _press(grid, state.width, state.height, *state.cursor)
            # The cursor's press also flips the witness membership of the
            # pressed cell (press sets compose by XOR).
            ci = state.cursor[1] * state.width + state.cursor[0]
            witness = set(state.press_witness)
            witness.symmetric_difference_update({ci})
            return (
                replace(
                    state,
                    grid=tuple(grid),
                    move_count=state.move_count + 1,
                    press_witness=tuple(sorted(witness)),
                ),
                True,
            )
        cursor, moved = move_cursor_clamped(
            state.cursor, name, state.width, state.height
        )
        if not moved:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: FlipState):
        x, y = state.cursor
        w, h = state.width, state.height
        return np.array([y > 0, y + 1 < h, x > 0, x + 1 < w, True], dtype=bool)

    def status(self, state: FlipState) -> Status:
        if all(state.grid):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: FlipState):
        return make_obs(
            cursor_pos=list(state.cursor),
            grid=list(state.grid),
            height=state.height,
            move_count=state.move_count,
            width=state.width,
        )

    def repetition_fields(self, state: FlipState) -> tuple:
        return (state.grid, state.cursor)

    def verify_solvable(self, state: FlipState) -> bool:
        """GF(2) elimination on the press matrix; exact for any size."""
        w, h = state.width, state.height
        n = w * h
        # Column j of the system is press j's toggle pattern; target is the
        # set of unlit cells.
        rows = []
        for cell in range(n):
            pattern = [0] * n
            _press(pattern, w, h, cell % w, cell // w)
            rows.append(pattern)
        # rows[j][i]: press j toggles cell i. Solve A p = b over GF(2).
        aug = [
            [rows[j][i] for j in range(n)] + [1 - state.grid[i]]
            for i in range(n)
        ]
        rank_col = 0
        for col in range(n):
            pivot = next(
                (r for r in range(rank_col, n) if aug[r][col]), None
            )
            if pivot is None:
                continue
            aug[rank_col], aug[pivot] = aug[pivot], aug[rank_col]
            for r in range(n):
                if r != rank_col and aug[r][col]:
                    aug[r] = [a ^ b for a, b in zip(aug[r], aug[rank_col])]
            rank_col += 1
        return not any(
            row[-1] and not any(row[:-1]) for row in aug
        )

    def render(self, state: FlipState) -> DrawList:
        dl = DrawList(state.width, state.height)
        dl.rect(0, 0, state.width, state.height, 11)
        for i, lit in enumerate(state.grid):
            x, y = i % state.width, i // state.width
            dl.rect(x + 0.04, y + 0.04, 0.92, 0.92, 15 if lit else 2)
        cx, cy = state.cursor
        dl.rect(cx + 0.04, cy + 0.04, 0.92, 0.12, 3)
        dl.rect(cx + 0.04, cy + 0.84, 0.92, 0.12, 3)
        return dl

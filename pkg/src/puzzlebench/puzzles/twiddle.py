"""Twiddle: rotate the tiles around themselves to arrange them into order.

The cursor picks an n x n block anchor; SELECT turns that block a quarter
counterclockwise, SELECT2 clockwise. Solved is ascending row-major order
(tile orientation is not tracked).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import SELECT, SELECT2, Puzzle, Status, make_obs, move_cursor_clamped


@dataclass(frozen=True)
class TwiddleState:
    width: int
    height: int
    block: int
    tiles: tuple[int, ...]  # row-major, values 1..w*h
    cursor: tuple[int, int]  # block anchor, in [0, w-n] x [0, h-n]
    move_count: int = 0
    scramble_witness: tuple | None = None


def _rotate_block(
    tiles: tuple[int, ...], w: int, n: int, ax: int, ay: int, clockwise: bool
) -> tuple[int, ...]:
    out = list(tiles)
    for by in range(n):
        for bx in range(n):
            # Clockwise: source for (bx, by) is (by, n-1-bx).
            if clockwise:
                sx, sy = by, n - 1 - bx
            else:
                sx, sy = n - 1 - by, bx
            out[(ay + by) * w + (ax + bx)] = tiles[(ay + sy) * w + (ax + sx)]
    return tuple(out)


class Twiddle(Puzzle):
    id = "twiddle"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT, SELECT2)

    def generate(self, params: ParamMap, rng: Rng) -> TwiddleState:
        w, h, n = params.width, params.height, params.block_size
        tiles = tuple(range(1, w * h + 1))
        anchors_w, anchors_h = w - n + 1, h - n + 1
        turns = []
        for _ in range(4 * w * h):
            ax = rng.below(anchors_w)
            ay = rng.below(anchors_h)
            cw = rng.coin()
            turns.append((ax, ay, cw))
            tiles = _rotate_block(tiles, w, n, ax, ay, cw)
        return TwiddleState(w, h, n, tiles, (0, 0), scramble_witness=tuple(turns))

    def transition(self, state: TwiddleState, action: int):
        name = self.action_names[action]
        if name in (SELECT, SELECT2):
            ax, ay = state.cursor
            tiles = _rotate_block(
                state.tiles, state.width, state.block, ax, ay, name == SELECT2
            )
            return (
                replace(
                    state,
                    tiles=tiles,
                    move_count=state.move_count + 1,
                    scramble_witness=None,
                ),
                True,
            )
        cursor, moved = move_cursor_clamped(
            state.cursor,
            name,
            state.width - state.block + 1,
            state.height - state.block + 1,
        )
        if not moved:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: TwiddleState):
        x, y = state.cursor
        aw = state.width - state.block + 1
        ah = state.height - state.block + 1
        return np.array(
            [y > 0, y + 1 < ah, x > 0, x + 1 < aw, True, True], dtype=bool
        )

    def status(self, state: TwiddleState) -> Status:
        if state.tiles == tuple(range(1, state.width * state.height + 1)):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: TwiddleState):
        return make_obs(
            block_size=state.block,
            cursor_pos=list(state.cursor),
            height=state.height,
            move_count=state.move_count,
            tiles=list(state.tiles),
            width=state.width,
        )

    def repetition_fields(self, state: TwiddleState) -> tuple:
        return (state.tiles, state.cursor)

    def verify_solvable(self, state: TwiddleState, budget: int = 500_000) -> bool:
        """BFS over board arrangements (cursor travel is free)."""
        from collections import deque

        from .base import OracleBudgetExceeded

        w, h, n = state.width, state.height, state.block
        target = tuple(range(1, w * h + 1))
        if state.scramble_witness is not None:
            tiles = state.tiles
            for ax, ay, cw in reversed(state.scramble_witness):
                tiles = _rotate_block(tiles, w, n, ax, ay, not cw)
            return tiles == target
        seen = {state.tiles}
        queue = deque([state.tiles])
        while queue:
            tiles = queue.popleft()
            if tiles == target:
                return True
            if len(seen) > budget:
                raise OracleBudgetExceeded("twiddle solvability search budget")
            for ay in range(h - n + 1):
                for ax in range(w - n + 1):
                    for cw in (False, True):
                        nxt = _rotate_block(tiles, w, n, ax, ay, cw)
                        if nxt not in seen:
                            seen.add(nxt)
                            queue.append(nxt)
        return False

    def render(self, state: TwiddleState) -> DrawList:
        dl = DrawList(state.width, state.height)
        dl.rect(0, 0, state.width, state.height, 13)
        for i, t in enumerate(state.tiles):
            x, y = i % state.width, i // state.width
            dl.rect(x + 0.03, y + 0.03, 0.94, 0.94, 1)
            dl.digits(t, x, y, 1.0, 2)
        ax, ay = state.cursor
        n = state.block
        dl.rect(ax, ay, n, 0.08, 3)
        dl.rect(ax, ay + n - 0.08, n, 0.08, 3)
        dl.rect(ax, ay, 0.08, n, 3)
        dl.rect(ax + n - 0.08, ay, 0.08, n, 3)
        return dl

"""Fifteen: slide the tiles around to arrange them into order.

Tiles are 1..n-1 with 0 as the gap, row-major. An arrow key slides the tile
on the opposite side of the gap into it: UP moves the tile below the gap
upward (the gap moves down). Solved is ascending order with the gap last.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import DOWN, LEFT, RIGHT, UP, Puzzle, Status, make_obs


@dataclass(frozen=True)
class FifteenState:
    width: int
    height: int
    tiles: tuple[int, ...]  # row-major, 0 = gap
    gap: tuple[int, int]  # (x, y) of the gap
    move_count: int = 0


def _solved_tiles(w: int, h: int) -> tuple[int, ...]:
    return tuple(range(1, w * h)) + (0,)


# Arrow -> position of the tile that slides, relative to the gap.
_TILE_OFFSET = {UP: (0, 1), DOWN: (0, -1), LEFT: (1, 0), RIGHT: (-1, 0)}


class Fifteen(Puzzle):
    id = "fifteen"
    action_names = (UP, DOWN, LEFT, RIGHT)

    def generate(self, params: ParamMap, rng: Rng) -> FifteenState:
        w, h = params.width, params.height
        state = FifteenState(w, h, _solved_tiles(w, h), (w - 1, h - 1))
        for _ in range(3 * w * h):
            moves = [a for a in range(4) if self._slide(state, a) is not None]
            state = self._slide(state, rng.choice(moves))
        return replace(state, move_count=0)

    def _slide(self, state: FifteenState, action: int) -> FifteenState | None:
        gx, gy = state.gap
        dx, dy = _TILE_OFFSET[self.action_names[action]]
        tx, ty = gx + dx, gy + dy
        if not (0 <= tx < state.width and 0 <= ty < state.height):
            return None
        tiles = list(state.tiles)
        ti = ty * state.width + tx
        gi = gy * state.width + gx
        tiles[gi], tiles[ti] = tiles[ti], tiles[gi]
        return replace(
            state,
            tiles=tuple(tiles),
            gap=(tx, ty),
            move_count=state.move_count + 1,
        )

    def transition(self, state: FifteenState, action: int):
        nxt = self._slide(state, action)
        if nxt is None:
            return state, False
        return nxt, True

    def action_mask(self, state: FifteenState):
        gx, gy = state.gap
        w, h = state.width, state.height
        return np.array(
            [gy + 1 < h, gy - 1 >= 0, gx + 1 < w, gx - 1 >= 0], dtype=bool
        )

    def status(self, state: FifteenState) -> Status:
        if state.tiles == _solved_tiles(state.width, state.height):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: FifteenState):
        return make_obs(
            gap_pos=list(state.gap),
            height=state.height,
            move_count=state.move_count,
            tiles=list(state.tiles),
            width=state.width,
        )

    def repetition_fields(self, state: FifteenState) -> tuple:
        return (state.tiles, state.gap)

    def verify_solvable(self, state: FifteenState) -> bool:
        """Standard parity argument: permutation parity (gap treated as the
        last element) must match the gap's row-distance parity."""
        order = [t for t in state.tiles if t != 0]
        inversions = sum(
            1
            for i in range(len(order))
            for j in range(i + 1, len(order))
            if order[i] > order[j]
        )
        gap_row_dist = (state.height - 1) - state.gap[1]
        if state.width % 2 == 1:
            return inversions % 2 == 0
        return (inversions + gap_row_dist) % 2 == 0

    def render(self, state: FifteenState) -> DrawList:
        dl = DrawList(state.width, state.height)
        dl.rect(0, 0, state.width, state.height, 13)
        for i, t in enumerate(state.tiles):
            x, y = i % state.width, i // state.width
            if t == 0:
                continue
            dl.rect(x + 0.03, y + 0.03, 0.94, 0.94, 1)
            dl.digits(t, x, y, 1.0, 2)
        return dl

"""Sixteen: slide a row at a time to arrange the tiles into order.

Numbered tiles on a torus of row/column slides. The frame cursor works as
in Netslide; SELECT pushes the faced lane into the grid, SELECT2 pushes it
back out the other way.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import (
    SELECT,
    SELECT2,
    OracleBudgetExceeded,
    Puzzle,
    Status,
    make_obs,
)
from .network import faced_lane, frame_move, slide_lane


@dataclass(frozen=True)
class SixteenState:
    width: int
    height: int
    tiles: tuple[int, ...]  # permutation of 1..w*h
    cursor: tuple[int, int]
    last_move_row: int = -1
    last_move_col: int = -1
    last_move_dir: int = 0
    move_count: int = 0
    scramble_witness: tuple | None = None


class Sixteen(Puzzle):
    id = "sixteen"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT, SELECT2)

    def generate(self, params: ParamMap, rng: Rng) -> SixteenState:
        w, h = params.width, params.height
        tiles = tuple(range(1, w * h + 1))
        slides = []
        for _ in range(4 * w * h):
            if rng.coin():
                lane = ("row", rng.below(h), 1 - 2 * rng.below(2))
            else:
                lane = ("col", rng.below(w), 1 - 2 * rng.below(2))
            slides.append(lane)
            tiles = slide_lane(tiles, w, h, *lane)
        return SixteenState(w, h, tiles, (0, -1), scramble_witness=tuple(slides))

    def _slide(self, state: SixteenState, reverse: bool):
        lane = faced_lane(state.cursor, state.width, state.height)
        if lane is None:
            return None
        kind, index, direction = lane
        if reverse:
            direction = -direction
        tiles = slide_lane(state.tiles, state.width, state.height, kind, index, direction)
        if kind == "row":
            row, col = index, -1
        else:
            row, col = -1, index
        return replace(
            state,
            tiles=tiles,
            scramble_witness=None,
            last_move_row=row,
            last_move_col=col,
            last_move_dir=direction,
            move_count=state.move_count + 1,
        )

    def transition(self, state: SixteenState, action: int):
        name = self.action_names[action]
        if name in (SELECT, SELECT2):
            nxt = self._slide(state, name == SELECT2)
            if nxt is None:
                return state, False
            return nxt, True
        cursor = frame_move(state.cursor, name, state.width, state.height)
        if cursor is None:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: SixteenState):
        w, h = state.width, state.height
        out = [frame_move(state.cursor, n, w, h) is not None
               for n in ("UP", "DOWN", "LEFT", "RIGHT")]
        can_slide = faced_lane(state.cursor, w, h) is not None
        out.extend([can_slide, can_slide])
        return np.array(out, dtype=bool)

    def status(self, state: SixteenState) -> Status:
        if state.tiles == tuple(range(1, state.width * state.height + 1)):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: SixteenState):
        return make_obs(
            cursor_pos=list(state.cursor),
            height=state.height,
            last_move_col=state.last_move_col,
            last_move_dir=state.last_move_dir,
            last_move_row=state.last_move_row,
            move_count=state.move_count,
            tiles=list(state.tiles),
            width=state.width,
        )

    def repetition_fields(self, state: SixteenState) -> tuple:
        return (
            state.tiles,
            state.cursor,
            state.last_move_row,
            state.last_move_col,
            state.last_move_dir,
        )

    def verify_solvable(self, state: SixteenState, budget: int = 400_000) -> bool:
        """BFS over slide sequences."""
        from collections import deque

        w, h = state.width, state.height
        target = tuple(range(1, w * h + 1))
        if state.tiles == target:
            return True
        if state.scramble_witness is not None:
            tiles = state.tiles
            for kind, index, direction in reversed(state.scramble_witness):
                tiles = slide_lane(tiles, w, h, kind, index, -direction)
            return tiles == target
        seen = {state.tiles}
        queue = deque([state.tiles])
        lanes = [("row", r, d) for r in range(h) for d in (1, -1)] + [
            ("col", c, d) for c in range(w) for d in (1, -1)
        ]
        while queue:
            tiles = queue.popleft()
            for lane in lanes:
                nxt = slide_lane(tiles, w, h, *lane)
                if nxt in seen:
                    continue
                if nxt == target:
                    return True
                if len(seen) > budget:
                    raise OracleBudgetExceeded("sixteen solvability search budget")
                seen.add(nxt)
                queue.append(nxt)
        return False

    def render(self, state: SixteenState) -> DrawList:
        w, h = state.width, state.height
        dl = DrawList(w + 2, h + 2)
        dl.rect(1, 1, w, h, 13)
        for i, t in enumerate(state.tiles):
            x, y = 1 + i % w, 1 + i // w
            dl.rect(x + 0.03, y + 0.03, 0.94, 0.94, 1)
            dl.digits(t, x, y, 1.0, 2)
        ux, uy = state.cursor[0] + 1, state.cursor[1] + 1
        dl.circle(ux + 0.5, uy + 0.5, 0.3, 3)
        return dl

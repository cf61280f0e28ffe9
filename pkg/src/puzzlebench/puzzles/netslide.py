"""Netslide: slide a row at a time to reassemble the network.

Same network tiles as Net, but scrambled by whole-row/column slides. The
cursor rides the frame ring around the grid; SELECT pushes the faced row or
column one cell into the grid with wraparound. The barrier level locks that
many lanes: a locked row/column never slides.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import (
    SELECT,
    OracleBudgetExceeded,
    Puzzle,
    Status,
    make_obs,
)
from .network import (
    DIRS,
    faced_lane,
    frame_move,
    network_solved,
    slide_lane,
    uniform_spanning_tree,
)


@dataclass(frozen=True)
class NetslideState:
    width: int
    height: int
    tiles: tuple[int, ...]
    cursor: tuple[int, int]  # on the frame ring
    locked_rows: tuple[int, ...]  # barrier-pinned lanes, ascending
    locked_cols: tuple[int, ...]
    movetarget: int  # scramble length, the move-count benchmark
    last_move_row: int = -1
    last_move_col: int = -1
    last_move_dir: int = 0
    move_count: int = 0
    # Inverse-replayable scramble record; None once the board is touched.
    scramble_witness: tuple | None = None


class Netslide(Puzzle):
    id = "netslide"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT)

    def generate(self, params: ParamMap, rng: Rng) -> NetslideState:
        w, h = params.width, params.height
        tiles = uniform_spanning_tree(w, h, rng)
        # Barriers pin whole lanes. Level b leaves min(w,h) - b rows and as
        # many columns slidable (at least one of each); level 0 pins none.
        b = params.barrier_level
        if b > 0:
            n_free = max(1, min(w, h) - b)
            rows_free = set(rng.sample_indices(h, min(n_free, h)))
            cols_free = set(rng.sample_indices(w, min(n_free, w)))
        else:
            rows_free = set(range(h))
            cols_free = set(range(w))
        locked_rows = tuple(r for r in range(h) if r not in rows_free)
        locked_cols = tuple(c for c in range(w) if c not in cols_free)
        free = [("row", r) for r in sorted(rows_free)] + [
            ("col", c) for c in sorted(cols_free)
        ]
        count = 2 * (w + h)
        slides = []
        for _ in range(count):
            kind, index = free[rng.below(len(free))]
            direction = 1 - 2 * rng.below(2)
            slides.append((kind, index, direction))
            tiles = slide_lane(tiles, w, h, kind, index, direction)
        return NetslideState(
            w, h, tiles, (0, -1), locked_rows, locked_cols, movetarget=count,
            scramble_witness=tuple(slides),
        )

    def _lane_allowed(self, state: NetslideState, lane) -> bool:
        kind, index, _ = lane
        if kind == "row":
            return index not in state.locked_rows
        return index not in state.locked_cols

    def transition(self, state: NetslideState, action: int):
        name = self.action_names[action]
        if name == SELECT:
            lane = faced_lane(state.cursor, state.width, state.height)
            if lane is None or not self._lane_allowed(state, lane):
                return state, False
            kind, index, direction = lane
            tiles = slide_lane(state.tiles, state.width, state.height, *lane)
            return (
                replace(
                    state,
                    tiles=tiles,
                    scramble_witness=None,
                    last_move_row=index if kind == "row" else -1,
                    last_move_col=index if kind == "col" else -1,
                    last_move_dir=direction,
                    move_count=state.move_count + 1,
                ),
                True,
            )
        cursor = frame_move(state.cursor, name, state.width, state.height)
        if cursor is None:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: NetslideState):
        w, h = state.width, state.height
        out = [frame_move(state.cursor, n, w, h) is not None
               for n in ("UP", "DOWN", "LEFT", "RIGHT")]
        lane = faced_lane(state.cursor, w, h)
        out.append(lane is not None and self._lane_allowed(state, lane))
        return np.array(out, dtype=bool)

    def status(self, state: NetslideState) -> Status:
        if network_solved(state.tiles, state.width, state.height):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def _barrier_marks(self, state: NetslideState) -> list[int]:
        # Tile-level mark: bit 0 = its row is pinned, bit 1 = its column.
        out = [0] * (state.width * state.height)
        for r in state.locked_rows:
            for x in range(state.width):
                out[r * state.width + x] |= 1
        for c in state.locked_cols:
            for y in range(state.height):
                out[y * state.width + c] |= 2
        return out

    def encode(self, state: NetslideState):
        return make_obs(
            barriers=self._barrier_marks(state),
            cursor_pos=list(state.cursor),
            height=state.height,
            last_move_col=state.last_move_col,
            last_move_dir=state.last_move_dir,
            last_move_row=state.last_move_row,
            move_count=state.move_count,
            movetarget=state.movetarget,
            tiles=list(state.tiles),
            width=state.width,
            wrapping=0,
        )

    def repetition_fields(self, state: NetslideState) -> tuple:
        return (
            state.tiles,
            state.cursor,
            state.last_move_row,
            state.last_move_col,
            state.last_move_dir,
        )

    def verify_solvable(self, state: NetslideState, budget: int = 400_000) -> bool:
        """BFS over allowed slide sequences on the tile grid."""
        from collections import deque

        w, h = state.width, state.height
        start = state.tiles
        if network_solved(start, w, h):
            return True
        if state.scramble_witness is not None:
            tiles = start
            for kind, index, direction in reversed(state.scramble_witness):
                tiles = slide_lane(tiles, w, h, kind, index, -direction)
            return network_solved(tiles, w, h)
        seen = {start}
        queue = deque([start])
        lanes = [
            ("row", r, d)
            for r in range(h)
            if r not in state.locked_rows
            for d in (1, -1)
        ] + [
            ("col", c, d)
            for c in range(w)
            if c not in state.locked_cols
            for d in (1, -1)
        ]
        while queue:
            tiles = queue.popleft()
            for lane in lanes:
                nxt = slide_lane(tiles, w, h, *lane)
                if nxt in seen:
                    continue
                if network_solved(nxt, w, h):
                    return True
                if len(seen) > budget:
                    raise OracleBudgetExceeded("netslide solvability search budget")
                seen.add(nxt)
                queue.append(nxt)
        return False

    def render(self, state: NetslideState) -> DrawList:
        w, h = state.width, state.height
        dl = DrawList(w + 2, h + 2)
        dl.rect(1, 1, w, h, 2)
        marks = self._barrier_marks(state)
        for i, mask in enumerate(state.tiles):
            x, y = 1 + i % w, 1 + i // w
            dl.rect(x + 0.02, y + 0.02, 0.96, 0.96, 11)
            cx, cy = x + 0.5, y + 0.5
            for d, (dx, dy) in enumerate(DIRS):
                if mask & (1 << d):
                    dl.line(cx, cy, cx + dx * 0.48, cy + dy * 0.48, 12, 2)
            if mask:
                dl.circle(cx, cy, 0.12, 6 if bin(mask).count("1") == 1 else 12)
            if marks[i]:
                dl.rect(x + 0.02, y + 0.02, 0.2, 0.2, 3)
        ux, uy = state.cursor[0] + 1, state.cursor[1] + 1
        dl.circle(ux + 0.5, uy + 0.5, 0.3, 3)
        return dl

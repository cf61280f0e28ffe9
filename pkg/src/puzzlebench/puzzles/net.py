"""Net: rotate each tile to reassemble the network.

Tiles hold the links of a uniform spanning tree, scrambled by independent
uniform rotations. SELECT turns the tile under the cursor a quarter
clockwise.
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
    move_cursor_clamped,
)
from .network import DIRS, network_solved, rotate_mask_cw, uniform_spanning_tree


@dataclass(frozen=True)
class NetState:
    width: int
    height: int
    tiles: tuple[int, ...]  # 4-bit link masks
    cursor: tuple[int, int]
    barriers: tuple[int, ...]  # accepted but always zero at these sizes
    move_count: int = 0


class Net(Puzzle):
    id = "net"
    action_names = ("UP", "DOWN", "LEFT", "RIGHT", SELECT)

    def generate(self, params: ParamMap, rng: Rng) -> NetState:
        w, h = params.width, params.height
        tiles = list(uniform_spanning_tree(w, h, rng))
        for i in range(w * h):
            for _ in range(rng.below(4)):
                tiles[i] = rotate_mask_cw(tiles[i])
        return NetState(w, h, tuple(tiles), (0, 0), (0,) * (w * h))

    def transition(self, state: NetState, action: int):
        name = self.action_names[action]
        if name == SELECT:
            i = state.cursor[1] * state.width + state.cursor[0]
            rotated = rotate_mask_cw(state.tiles[i])
            if rotated == state.tiles[i]:  # 4-way cross or empty tile
                return state, False
            tiles = list(state.tiles)
            tiles[i] = rotated
            return (
                replace(
                    state, tiles=tuple(tiles), move_count=state.move_count + 1
                ),
                True,
            )
        cursor, moved = move_cursor_clamped(
            state.cursor, name, state.width, state.height
        )
        if not moved:
            return state, False
        return replace(state, cursor=cursor), True

    def action_mask(self, state: NetState):
        x, y = state.cursor
        w, h = state.width, state.height
        tile = state.tiles[y * w + x]
        sel = rotate_mask_cw(tile) != tile
        return np.array([y > 0, y + 1 < h, x > 0, x + 1 < w, sel], dtype=bool)

    def status(self, state: NetState) -> Status:
        if network_solved(state.tiles, state.width, state.height):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: NetState):
        return make_obs(
            barriers=list(state.barriers),
            cursor_pos=list(state.cursor),
            height=state.height,
            move_count=state.move_count,
            tiles=list(state.tiles),
            width=state.width,
            wrapping=0,
        )

    def repetition_fields(self, state: NetState) -> tuple:
        return (state.tiles, state.cursor)

    def verify_solvable(self, state: NetState, budget: int = 1_000_000) -> bool:
        """Backtracking over per-tile rotations with left/up consistency."""
        w, h = state.width, state.height
        n = w * h
        options: list[list[int]] = []
        for mask in state.tiles:
            opts = []
            m = mask
            for _ in range(4):
                if m not in opts:
                    opts.append(m)
                m = rotate_mask_cw(m)
            options.append(opts)

        tried = 0
        chosen = [0] * n

        def fits(i: int, mask: int) -> bool:
            x, y = i % w, i // w
            # left neighbor (dir 3) and up neighbor (dir 0) already chosen
            left_link = bool(mask & (1 << 3))
            if x == 0:
                if left_link:
                    return False
            elif left_link != bool(chosen[i - 1] & (1 << 1)):
                return False
            up_link = bool(mask & (1 << 0))
            if y == 0:
                if up_link:
                    return False
            elif up_link != bool(chosen[i - w] & (1 << 2)):
                return False
            if x == w - 1 and mask & (1 << 1):
                return False
            if y == h - 1 and mask & (1 << 2):
                return False
            return True

        def rec(i: int) -> bool:
            nonlocal tried
            if i == n:
                return network_solved(tuple(chosen), w, h)
            for mask in options[i]:
                tried += 1
                if tried > budget:
                    raise OracleBudgetExceeded("net solvability search budget")
                if fits(i, mask):
                    chosen[i] = mask
                    if rec(i + 1):
                        return True
            return False

        return rec(0)

    def render(self, state: NetState) -> DrawList:
        dl = DrawList(state.width, state.height)
        dl.rect(0, 0, state.width, state.height, 2)
        for i, mask in enumerate(state.tiles):
            x, y = i % state.width, i // state.width
            dl.rect(x + 0.02, y + 0.02, 0.96, 0.96, 11)
            cx, cy = x + 0.5, y + 0.5
            for d, (dx, dy) in enumerate(DIRS):
                if mask & (1 << d):
                    dl.line(cx, cy, cx + dx * 0.48, cy + dy * 0.48, 12, 2)
            if mask:
                dl.circle(cx, cy, 0.12, 6 if bin(mask).count("1") == 1 else 12)
        ux, uy = state.cursor
        dl.rect(ux + 0.02, uy + 0.02, 0.96, 0.08, 3)
        dl.rect(ux + 0.02, uy + 0.9, 0.96, 0.08, 3)
        return dl

"""Untangle: reposition the points so that the lines do not cross.

Points sit on a 64 x 64 integer lattice. The graph is the Delaunay
triangulation of the freshly sampled layout (planar by construction), then
the point positions are shuffled. LEFT/RIGHT cycle the selected point,
SELECT grabs it, and arrows drag a grabbed point one lattice step.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng
from .base import (
    DOWN,
    LEFT,
    RIGHT,
    SELECT,
    UP,
    GenerationFailure,
    Puzzle,
    Status,
    make_obs,
)
from .geometry import (
    any_cocircular_quad,
    any_collinear_triple,
    delaunay_edges,
    proper_cross,
    strictly_between,
)

LATTICE = 64


@dataclass(frozen=True)
class UntangleState:
    n_points: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    selected: int = 0
    grabbed: bool = False
    move_count: int = 0
    home_xs: tuple[int, ...] = ()  # crossing-free witness layout
    home_ys: tuple[int, ...] = ()


def layout_untangled(
    xs: tuple[int, ...], ys: tuple[int, ...], edges
) -> bool:
    pts = list(zip(xs, ys))
    for idx, (i, j) in enumerate(edges):
        a, b = pts[i], pts[j]
        for k, l in edges[idx + 1 :]:
            if len({i, j, k, l}) < 4:
                continue
            if proper_cross(a, b, pts[k], pts[l]):
                return False
        for p in range(len(pts)):
            if p not in (i, j) and strictly_between(a, b, pts[p]):
                return False
    return True


_MOVES = {UP: (0, -1), DOWN: (0, 1), LEFT: (-1, 0), RIGHT: (1, 0)}


class Untangle(Puzzle):
    id = "untangle"
    action_names = (UP, DOWN, LEFT, RIGHT, SELECT)

    def generate(self, params: ParamMap, rng: Rng) -> UntangleState:
        n = params.points
        # Points are sampled from a centered box that grows with the point
        # count, keeping untangling distances proportional to n. General
        # position (no collinear triple, no cocircular quadruple) makes the
        # triangulation unique and the home layout strictly crossing-free.
        side = max(8, min(LATTICE, 4 * n))
        lo = (LATTICE - side) // 2
        for _ in range(10_000):
            cells = rng.sample_indices(side * side, n)
            pts = [(lo + c % side, lo + c // side) for c in cells]
            if not (any_collinear_triple(pts) or any_cocircular_quad(pts)):
                break
        else:
            raise GenerationFailure(
                f"untangle: no general-position layout for {n} points"
            )
        edges = delaunay_edges(pts)
        order = list(range(n))
        rng.shuffle(order)
        shuffled = [pts[order[i]] for i in range(n)]
        xs = tuple(p[0] for p in shuffled)
        ys = tuple(p[1] for p in shuffled)
        return UntangleState(
            n,
            xs,
            ys,
            edges,
            home_xs=tuple(p[0] for p in pts),
            home_ys=tuple(p[1] for p in pts),
        )

    def transition(self, state: UntangleState, action: int):
        name = self.action_names[action]
        if name == SELECT:
            return (
                replace(state, grabbed=not state.grabbed),
                True,
            )
        if not state.grabbed:
            if name in (LEFT, RIGHT):
                step = -1 if name == LEFT else 1
                return (
                    replace(
                        state,
                        selected=(state.selected + step) % state.n_points,
                    ),
                    True,
                )
            return state, False
        dx, dy = _MOVES[name]
        i = state.selected
        nx, ny = state.xs[i] + dx, state.ys[i] + dy
        if not (0 <= nx < LATTICE and 0 <= ny < LATTICE):
            return state, False
        occupied = any(
            state.xs[j] == nx and state.ys[j] == ny
            for j in range(state.n_points)
        )
        if occupied:
            return state, False
        xs = state.xs[:i] + (nx,) + state.xs[i + 1 :]
        ys = state.ys[:i] + (ny,) + state.ys[i + 1 :]
        return (
            replace(state, xs=xs, ys=ys, move_count=state.move_count + 1),
            True,
        )

    def action_mask(self, state: UntangleState):
        if not state.grabbed:
            return np.array([False, False, True, True, True], dtype=bool)
        out = []
        i = state.selected
        taken = set(zip(state.xs, state.ys))
        for name in (UP, DOWN, LEFT, RIGHT):
            dx, dy = _MOVES[name]
            nx, ny = state.xs[i] + dx, state.ys[i] + dy
            ok = 0 <= nx < LATTICE and 0 <= ny < LATTICE and (nx, ny) not in taken
            out.append(ok)
        out.append(True)
        return np.array(out, dtype=bool)

    def status(self, state: UntangleState) -> Status:
        if layout_untangled(state.xs, state.ys, state.edges):
            return Status.SOLVED
        return Status.IN_PROGRESS

    def encode(self, state: UntangleState):
        return make_obs(
            edges=[list(e) for e in state.edges],
            grabbed=int(state.grabbed),
            lattice_size=LATTICE,
            n_points=state.n_points,
            selected=state.selected,
            xs=list(state.xs),
            ys=list(state.ys),
        )

    def repetition_fields(self, state: UntangleState) -> tuple:
        return (state.xs, state.ys, state.selected, state.grabbed)

    def verify_solvable(self, state: UntangleState) -> bool:
        # The home layout is a crossing-free embedding of the same graph and
        # single-step moves can always reach it on the sparse lattice.
        if state.home_xs:
            return layout_untangled(state.home_xs, state.home_ys, state.edges)
        return True

    def render(self, state: UntangleState) -> DrawList:
        dl = DrawList(LATTICE, LATTICE)
        dl.rect(0, 0, LATTICE, LATTICE, 0)
        pts = list(zip(state.xs, state.ys))
        for i, j in state.edges:
            ax, ay = pts[i]
            bx, by = pts[j]
            dl.line(ax + 0.5, ay + 0.5, bx + 0.5, by + 0.5, 12, 1)
        for k, (x, y) in enumerate(pts):
            color = 3 if k == state.selected and state.grabbed else (
                6 if k == state.selected else 5
            )
            dl.circle(x + 0.5, y + 0.5, 1.3, color)
        return dl

"""Shared puzzle interface: generation, transitions, status, encoding, drawing.

Game states are immutable dataclasses; transitions return a new state (or the
input object unchanged, so identity doubles as a fast no-change check).
Observations are ordered dicts of integer numpy arrays and Python ints, keys
in alphabetical order.
"""

from __future__ import annotations

import enum
from collections import OrderedDict

import numpy as np

from ..drawing import DrawList
from ..params import ParamMap
from ..rng import Rng


class Status(enum.Enum):
    IN_PROGRESS = "in_progress"
    SOLVED = "solved"
    FAILED = "failed"


class GenerationFailure(RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class OracleBudgetExceeded(RuntimeError):
    """verify_solvable ran past its search budget."""


UP, DOWN, LEFT, RIGHT = "UP", "DOWN", "LEFT", "RIGHT"
SELECT, SELECT2, UNDO = "SELECT", "SELECT2", "UNDO"

GENERATION_RETRIES = 1000


class Puzzle:
    """Base class; subclasses register themselves via __init_subclass__."""

    id: str = ""
    action_names: tuple[str, ...] = ()

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        if cls.id:
            REGISTRY[cls.id] = cls()

    # -- game logic -------------------------------------------------------

    def generate(self, params: ParamMap, rng: Rng):
        raise NotImplementedError

    def transition(self, state, action: int):
        """Apply action by index; returns (new_state, changed)."""
        raise NotImplementedError

    def status(self, state) -> Status:
        raise NotImplementedError

    def encode(self, state) -> OrderedDict:
        raise NotImplementedError

    def repetition_fields(self, state) -> tuple:
        """Logical-state tuple for revisit counting: no counters, no undo
        history; cursor and selection marks included."""
        raise NotImplementedError

    def render(self, state) -> DrawList:
        raise NotImplementedError

    def verify_solvable(self, state) -> bool:
        raise NotImplementedError

    # -- derived helpers ----------------------------------------------------

    @property
    def cardinality(self) -> int:
        return len(self.action_names)

    def action_index(self, name: str) -> int:
        return self.action_names.index(name)

    def action_mask(self, state) -> np.ndarray:
        """mask[i] is True iff action i changes the state.

        Subclasses may override with a direct rule; this brute-force default
        is also the ground truth the overrides are tested against.
        """
        return np.array(
            [self.transition(state, a)[1] for a in range(self.cardinality)],
            dtype=bool,
        )

    def generate_rejecting_solved(self, params: ParamMap, rng: Rng):
        """Resample with the same stream until the instance is unsolved."""
        for _ in range(GENERATION_RETRIES):
            state = self.generate(params, rng)
            if self.status(state) != Status.SOLVED:
                return state
        raise GenerationFailure(f"{self.id}: no unsolved instance in budget")


REGISTRY: dict[str, Puzzle] = {}


def get_puzzle(puzzle_id: str) -> Puzzle:
    try:
        return REGISTRY[puzzle_id]
    except KeyError:
        raise KeyError(f"unknown puzzle {puzzle_id!r}") from None


def obs_entry(value) -> np.ndarray | int:
    """Normalize an observation value: lists become int64 arrays."""
    if isinstance(value, np.ndarray):
        return value
    if isinstance(value, (list, tuple)):
        return np.asarray(value, dtype=np.int64)
    return int(value)


def make_obs(**fields) -> OrderedDict:
    """Ordered observation record with keys sorted alphabetically."""
    return OrderedDict((k, obs_entry(fields[k])) for k in sorted(fields))


def clamp(v: int, lo: int, hi: int) -> int:
    return lo if v < lo else hi if v > hi else v


# Cursor deltas for the four arrow actions, x right, y down.
ARROW_DELTAS: dict[str, tuple[int, int]] = {
    UP: (0, -1),
    DOWN: (0, 1),
    LEFT: (-1, 0),
    RIGHT: (1, 0),
}


def move_cursor_clamped(
    cursor: tuple[int, int], action_name: str, w: int, h: int
) -> tuple[tuple[int, int], bool]:
    """Move a grid-interior cursor, clamped to [0,w) x [0,h)."""
    dx, dy = ARROW_DELTAS[action_name]
    nx, ny = clamp(cursor[0] + dx, 0, w - 1), clamp(cursor[1] + dy, 0, h - 1)
    moved = (nx, ny) != cursor
    return (nx, ny), moved


"""Environment state machine: reset/step lifecycle, rewards, truncation,
repetition-based early termination, masking, observation dispatch.

Rewards are terminal-only: +reward_solved on completion, reward_failed on an
irreversible dead end, 0 otherwise (including truncation by the step cap or
the state-revisit threshold).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .params import ParamMap, parse_params
from .puzzles import Status, get_puzzle, repetition_key
from .raster import rasterize
from .rng import Rng, episode_seed, stream_seed

DEFAULT_MAX_STEPS = 10_000
DEFAULT_REPEAT_THRESHOLD = 10


class EnvError(RuntimeError):
    pass


class EpisodeOver(EnvError):
    """reset() is required before further step()/mask() calls."""


class ActionOutOfRange(EnvError):
    pass


@dataclass(frozen=True)
class EnvConfig:
    puzzle_id: str
    params: ParamMap
    obs_type: str = "state"  # "state" | "pixels"
    pixel_size: int = 128
    max_steps: Optional[int] = DEFAULT_MAX_STEPS
    repeat_threshold: Optional[int] = None
    reward_solved: float = 1.0
    reward_failed: float = -1.0
    base_seed: int = 0

    def validate(self) -> None:
        get_puzzle(self.puzzle_id)
        if self.obs_type not in ("state", "pixels"):
            raise ValueError(f"obs_type must be state|pixels, got {self.obs_type!r}")
        if self.pixel_size < 16:
            raise ValueError("pixel_size must be >= 16")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1 when present")
        if self.repeat_threshold is not None and self.repeat_threshold < 1:
            raise ValueError("repeat_threshold must be >= 1 when present")
        if not (self.reward_solved > 0 > self.reward_failed):
            raise ValueError("need reward_solved > 0 > reward_failed")


@dataclass(frozen=True)
class StepResult:
    observation: Any
    reward: float
    terminated: bool
    truncated: bool
    info: dict = field(default_factory=dict)


def config_from_text(puzzle_id: str, params_text: str, **overrides) -> EnvConfig:
    """Build a config from a parameter string; a '#seed' suffix becomes
    base_seed unless base_seed is passed explicitly."""
    params, seed = parse_params(puzzle_id, params_text)
    if seed is not None and "base_seed" not in overrides:
        overrides["base_seed"] = seed
    return EnvConfig(puzzle_id=puzzle_id, params=params, **overrides)


class Env:
    """Single-owner environment handle. Distinct instances are independent."""

    def __init__(self, config: EnvConfig):
        config.validate()
        self.config = config
        self.puzzle = get_puzzle(config.puzzle_id)
        self._episode_index = 0
        self._state = None
        self._in_progress = False
        self._outcome = "idle"  # idle | in_progress | solved | failed | truncated
        self._step_count = 0
        self._repeat_counts: dict[bytes, int] = {}
        self._obs = None
        self._state_obs = None
        self._mask = None
        self._key: bytes = b""

    # -- introspection -------------------------------------------------------

    @property
    def cardinality(self) -> int:
        return self.puzzle.cardinality

    @property
    def action_names(self) -> tuple[str, ...]:
        return self.puzzle.action_names

    @property
    def step_count(self) -> int:
        return self._step_count

    @property
    def state(self):
        return self._state

    @property
    def episode_status(self) -> str:
        return self._outcome

    # -- lifecycle -----------------------------------------------------------

    def reset(self, seed_override: Optional[int] = None):
        """Generate a fresh solvable, unsolved instance.

        The episode stream is derived from (base_seed, episode_index); with
        seed_override the instance depends on the override alone.
        """
        if seed_override is None:
            seed = episode_seed(self.config.base_seed, self._episode_index)
        else:
            seed = stream_seed(seed_override)
        self._episode_index += 1
        rng = Rng(seed)
        self._state = self.puzzle.generate_rejecting_solved(self.config.params, rng)
        self._in_progress = True
        self._outcome = "in_progress"
        self._step_count = 0
        self._refresh_caches()
        self._repeat_counts = {self._key: 1}
        return self._obs, self._info()

    def _refresh_caches(self) -> None:
        self._mask = self.puzzle.action_mask(self._state)
        self._key = repetition_key(self.config.puzzle_id, self._state)
        self._state_obs = self.puzzle.encode(self._state)
        if self.config.obs_type == "pixels":
            self._obs = rasterize(
                self.puzzle.render(self._state), self.config.pixel_size
            )
        else:
            self._obs = self._state_obs

    def _info(self) -> dict:
        return {"puzzle_state": self._state_obs, "action_mask": self._mask}

    def step(self, action: int) -> StepResult:
        if not self._in_progress:
            raise EpisodeOver("episode is over; call reset()")
        if not isinstance(action, (int, np.integer)) or not (
            0 <= int(action) < self.cardinality
        ):
            raise ActionOutOfRange(
                f"action {action!r} not in [0, {self.cardinality})"
            )

        new_state, changed = self.puzzle.transition(self._state, int(action))
        self._step_count += 1
        status = Status.IN_PROGRESS
        if changed:
            self._state = new_state
            status = self.puzzle.status(new_state)
            self._refresh_caches()

        reward = 0.0
        terminated = truncated = False
        if status == Status.SOLVED:
            terminated = True
            reward = self.config.reward_solved
            self._outcome = "solved"
        elif status == Status.FAILED:
            terminated = True
            reward = self.config.reward_failed
            self._outcome = "failed"
        else:
            cap = self.config.max_steps
            if cap is not None and self._step_count >= cap:
                truncated = True
            elif self.config.repeat_threshold is not None:
                count = self._repeat_counts.get(self._key, 0) + 1
                self._repeat_counts[self._key] = count
                if count > self.config.repeat_threshold:
                    truncated = True
            if truncated:
                self._outcome = "truncated"
        if terminated or truncated:
            self._in_progress = False

        return StepResult(
            observation=self._obs,
            reward=reward,
            terminated=terminated,
            truncated=truncated,
            info=self._info(),
        )

    def action_mask(self) -> np.ndarray:
        if not self._in_progress:
            raise EpisodeOver("episode is over; call reset()")
        return self._mask


def make_env(config: EnvConfig) -> Env:
    return Env(config)

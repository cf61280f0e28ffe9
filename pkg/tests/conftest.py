"""Shared fixtures: the benchmark parameter rows and reachable-state walks."""

from __future__ import annotations

import pytest

from puzzlebench.env import Env, config_from_text
from puzzlebench.rng import Rng

# Every implemented (puzzle, params) row of the reference tables.
ROWS = [
    ("cube", "c3x3"),
    ("fifteen", "2x2"),
    ("flip", "3x3c"),
    ("flood", "3x3c6m5"),
    ("net", "2x2"),
    ("netslide", "2x3b1"),
    ("netslide", "3x3b1"),
    ("samegame", "2x3c3s2"),
    ("samegame", "5x5c3s2"),
    ("sixteen", "2x3"),
    ("twiddle", "2x3n2"),
    ("untangle", "4"),
    ("untangle", "6"),
]

# One row per puzzle, at the baseline (random-column) parameters.
BASELINE_ROWS = [
    ("fifteen", "2x2"),
    ("flip", "3x3c"),
    ("flood", "3x3c6m5"),
    ("cube", "c3x3"),
    ("net", "2x2"),
    ("netslide", "2x3b1"),
    ("samegame", "2x3c3s2"),
    ("sixteen", "2x3"),
    ("twiddle", "2x3n2"),
    ("untangle", "4"),
]


def make_test_env(puzzle_id: str, params_text: str, **overrides) -> Env:
    return Env(config_from_text(puzzle_id, params_text, **overrides))


def random_walk_state(env: Env, rng: Rng, steps: int):
    """Advance the env by uniformly random actions; stops early at episode
    end. Returns the final state."""
    for _ in range(steps):
        result = env.step(rng.below(env.cardinality))
        if result.terminated or result.truncated:
            break
    return env.state


@pytest.fixture
def rng():
    return Rng(12345)

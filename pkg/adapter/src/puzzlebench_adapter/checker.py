"""Environment conformance checker.

Verifies the standard API contract an RL library relies on: reset seeding,
the five-element step tuple, observation space containment, and info
contents. Raises AssertionError with a description on the first violation.
"""

from __future__ import annotations

import numpy as np

from .adapter import PuzzleAdapter


def _obs_equal(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return isinstance(b, np.ndarray) and np.array_equal(a, b)
    if set(a) != set(b):
        return False
    return all(np.array_equal(a[k], b[k]) for k in a)


def check_env(env: PuzzleAdapter, episodes: int = 2, seed: int = 1234) -> None:
    assert hasattr(env, "action_space") and hasattr(env, "observation_space")
    assert env.action_space.n == len(env.action_names)

    # reset seeding: same seed, same observation; arity (obs, info)
    first = env.reset(seed=seed)
    assert isinstance(first, tuple) and len(first) == 2, "reset must return (obs, info)"
    obs1, info1 = first
    obs2, info2 = env.reset(seed=seed)
    assert _obs_equal(obs1, obs2), "reset(seed) is not reproducible"
    assert env.observation_space.contains(obs1), "reset observation outside space"
    _check_info(env, info1)

    rng = np.random.default_rng(seed)
    for _ in range(episodes):
        obs, info = env.reset(seed=int(rng.integers(2**31)))
        assert env.observation_space.contains(obs)
        for _ in range(200):
            action = int(rng.integers(env.action_space.n))
            assert env.action_space.contains(action)
            out = env.step(action)
            assert isinstance(out, tuple) and len(out) == 5, "step must return 5 values"
            obs, reward, terminated, truncated, info = out
            assert env.observation_space.contains(obs), "step observation outside space"
            assert isinstance(reward, float)
            assert isinstance(terminated, bool) and isinstance(truncated, bool)
            assert not (terminated and truncated)
            _check_info(env, info)
            if terminated or truncated:
                break


def _check_info(env: PuzzleAdapter, info: dict) -> None:
    assert "puzzle_state" in info, "info must carry puzzle_state"
    assert "action_mask" in info, "info must carry action_mask"
    mask = info["action_mask"]
    assert mask.dtype == bool and mask.shape == (env.action_space.n,)

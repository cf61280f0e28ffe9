"""Benchmark harness: pluggable policies, seeded evaluation campaigns,
success-rate / episode-length statistics, and the reference Optimal table.

Episode i of an evaluation uses seed base_seed + i, so campaigns are
reproducible and shardable by seed range; the aggregator merges shards
order-independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

import numpy as np

from .env import Env, EnvConfig, StepResult
from .params import format_params
from .rng import Rng, stream_seed


class EmptyMask(ValueError):
    pass


class UnknownConfiguration(KeyError):
    pass


def random_action(
    rng: Rng, mask: Optional[np.ndarray], cardinality: int
) -> int:
    """Uniform over all actions, or over mask-true actions when given."""
    if mask is None:
        return rng.below(cardinality)
    allowed = [i for i in range(cardinality) if mask[i]]
    if not allowed:
        raise EmptyMask("action mask has no true bits")
    return allowed[rng.below(len(allowed))]


class Policy:
    """A policy maps the latest StepResult (or reset obs/info) to an action."""

    def begin_episode(self, env: Env, seed: int) -> None:
        pass

    def choose(self, env: Env, obs, info) -> int:
        raise NotImplementedError


class RandomPolicy(Policy):
    def __init__(self, masked: bool = False):
        self.masked = masked
        self._rng = Rng(0)

    def begin_episode(self, env: Env, seed: int) -> None:
        # Decision stream decoupled from the generation stream.
        self._rng = Rng(stream_seed(seed ^ 0x9E3779B97F4A7C15))

    def choose(self, env: Env, obs, info) -> int:
        mask = info["action_mask"] if self.masked else None
        return random_action(self._rng, mask, env.cardinality)


class ScriptPolicy(Policy):
    """Replays a fixed list of action names/indices, cycling when exhausted."""

    def __init__(self, tokens: list[str]):
        if not tokens:
            raise ValueError("script policy needs at least one action")
        self.tokens = tokens
        self._pos = 0

    @classmethod
    def from_file(cls, path: str) -> "ScriptPolicy":
        with open(path, "r", encoding="utf-8") as fh:
            return cls(fh.read().split())

    def begin_episode(self, env: Env, seed: int) -> None:
        self._pos = 0

    def choose(self, env: Env, obs, info) -> int:
        token = self.tokens[self._pos % len(self.tokens)]
        self._pos += 1
        if token.isdigit():
            return int(token)
        return env.puzzle.action_index(token.upper())


def make_policy(spec: str) -> Policy:
    if spec == "random":
        return RandomPolicy(masked=False)
    if spec == "random-masked":
        return RandomPolicy(masked=True)
    if spec.startswith("script:"):
        return ScriptPolicy.from_file(spec.split(":", 1)[1])
    raise ValueError(f"unknown policy {spec!r}")


@dataclass(frozen=True)
class EpisodeRecord:
    seed: int
    steps: int
    outcome: str  # solved | failed | truncated
    reward: float


def run_episode(env: Env, policy: Policy, seed: int) -> EpisodeRecord:
    obs, info = env.reset(seed_override=seed)
    policy.begin_episode(env, seed)
    result: StepResult | None = None
    while True:
        action = policy.choose(env, obs, info)
        result = env.step(action)
        obs, info = result.observation, result.info
        if result.terminated or result.truncated:
            break
    return EpisodeRecord(
        seed=seed,
        steps=env.step_count,
        outcome=env.episode_status,
        reward=result.reward,
    )


@dataclass
class StatsAggregator:
    """Order-independent accumulator (count/sum/M2 merge, Chan et al.)."""

    n_episodes: int = 0
    solved: int = 0
    failed: int = 0
    truncated: int = 0
    _mean: float = 0.0
    _m2: float = 0.0

    def add(self, record: EpisodeRecord) -> None:
        self.n_episodes += 1
        if record.outcome == "solved":
            self.solved += 1
            delta = record.steps - self._mean
            self._mean += delta / self.solved
            self._m2 += delta * (record.steps - self._mean)
        elif record.outcome == "failed":
            self.failed += 1
        else:
            self.truncated += 1

    def merge(self, other: "StatsAggregator") -> None:
        if other.solved:
            n1, n2 = self.solved, other.solved
            if n1 == 0:
                self._mean, self._m2 = other._mean, other._m2
            else:
                delta = other._mean - self._mean
                total = n1 + n2
                self._mean += delta * n2 / total
                self._m2 += other._m2 + delta * delta * n1 * n2 / total
        self.n_episodes += other.n_episodes
        self.solved += other.solved
        self.failed += other.failed
        self.truncated += other.truncated

    def stats(self) -> "BenchStats":
        return BenchStats(
            n_episodes=self.n_episodes,
            success_rate=self.solved / self.n_episodes if self.n_episodes else 0.0,
            mean_steps_successful=self._mean if self.solved else None,
            std_steps_successful=(
                (self._m2 / self.solved) ** 0.5 if self.solved else None
            ),
            solved=self.solved,
            failed=self.failed,
            truncated=self.truncated,
        )


@dataclass(frozen=True)
class BenchStats:
    n_episodes: int
    success_rate: float
    mean_steps_successful: Optional[float]  # over solved episodes only
    std_steps_successful: Optional[float]  # population std over solved
    solved: int
    failed: int
    truncated: int

    def as_dict(self) -> dict:
        return {
            "n_episodes": self.n_episodes,
            "success_rate": self.success_rate,
            "mean_steps_successful": self.mean_steps_successful,
            "std_steps_successful": self.std_steps_successful,
            "outcomes": {
                "solved": self.solved,
                "failed": self.failed,
                "truncated": self.truncated,
            },
        }


def evaluate(
    config: EnvConfig,
    policy_factory: Callable[[], Policy] | Policy | str,
    n_episodes: int,
    base_seed: int = 0,
    record_sink: Optional[list] = None,
) -> BenchStats:
    """Run n_episodes with seeds base_seed..base_seed+n-1 and aggregate."""
    if n_episodes < 1:
        raise ValueError("n_episodes must be >= 1")
    if isinstance(policy_factory, str):
        policy = make_policy(policy_factory)
    elif isinstance(policy_factory, Policy):
        policy = policy_factory
    else:
        policy = policy_factory()
    env = Env(config)
    agg = StatsAggregator()
    for i in range(n_episodes):
        record = run_episode(env, policy, base_seed + i)
        agg.add(record)
        if record_sink is not None:
            record_sink.append(record)
    return agg.stats()


def _load_optimal_table() -> dict:
    with resources.files("puzzlebench.data").joinpath("optimal.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return json.load(fh)


_OPTIMAL = None


def optimal_upper_bound(puzzle_id: str, params_text: str) -> int:
    """The reference Optimal value for a (puzzle, params) row."""
    global _OPTIMAL
    if _OPTIMAL is None:
        _OPTIMAL = _load_optimal_table()
    try:
        return _OPTIMAL["entries"][puzzle_id][params_text]
    except KeyError:
        raise UnknownConfiguration(
            f"no optimal reference for {puzzle_id} {params_text!r}"
        ) from None


def optimal_rows() -> list[tuple[str, str, int]]:
    global _OPTIMAL
    if _OPTIMAL is None:
        _OPTIMAL = _load_optimal_table()
    return [
        (pid, ptext, steps)
        for pid, rows in _OPTIMAL["entries"].items()
        for ptext, steps in rows.items()
    ]


def canonical_params_text(config: EnvConfig) -> str:
    return format_params(config.puzzle_id, config.params)

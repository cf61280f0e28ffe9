"""Headless logic-puzzle environments for reinforcement learning.

Ten puzzles with seeded solvable generation, discrete cursor-driven actions,
action masking, state and pixel observations, terminal-only rewards, a
benchmark harness with a reproducible random baseline, and a line-delimited
JSON protocol for external clients.
"""

from .bench import (
    BenchStats,
    EpisodeRecord,
    Policy,
    RandomPolicy,
    ScriptPolicy,
    evaluate,
    optimal_upper_bound,
    random_action,
    run_episode,
)
from .env import (
    ActionOutOfRange,
    Env,
    EnvConfig,
    EpisodeOver,
    StepResult,
    config_from_text,
    make_env,
)
from .params import ParamMap, format_params, parse_params
from .puzzles import PUZZLE_IDS, GenerationFailure, Status, get_puzzle, repetition_key
from .raster import rasterize

__all__ = [
    "ActionOutOfRange",
    "BenchStats",
    "Env",
    "EnvConfig",
    "EpisodeOver",
    "EpisodeRecord",
    "GenerationFailure",
    "ParamMap",
    "Policy",
    "PUZZLE_IDS",
    "RandomPolicy",
    "ScriptPolicy",
    "Status",
    "StepResult",
    "config_from_text",
    "evaluate",
    "format_params",
    "get_puzzle",
    "make_env",
    "optimal_upper_bound",
    "parse_params",
    "random_action",
    "rasterize",
    "repetition_key",
    "run_episode",
]

__version__ = "0.1.0"

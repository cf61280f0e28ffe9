"""The environment adapter: reset/step/close over the wire protocol, with
declared observation and action spaces derived from the server handshake.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .client import ProtocolClient, decode_info, decode_observation
from .spaces import Box, DictSpace, Discrete

INT64_MIN = np.iinfo(np.int64).min
INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True)
class AdapterConfig:
    puzzle: str
    params: str
    obs_type: str = "state"  # "state" | "pixels"
    pixel_size: int = 128
    max_steps: Optional[int] = 10_000
    early_term: Optional[int] = None
    seed: Optional[int] = None
    server_command: Optional[list] = None
    address: Optional[str] = None  # host:port for a remote server


class PuzzleAdapter:
    """Gymnasium-style environment backed by a protocol session.

    The default mode spawns one server subprocess per adapter; pass
    `address` to attach to a shared TCP server instead.
    """

    metadata = {"render_modes": []}

    def __init__(self, config: AdapterConfig):
        self.config = config
        self.id = f"puzzles/{config.puzzle}-v1"
        self._client = ProtocolClient(config.server_command, config.address)
        made = self._client.request(
            cmd="make",
            puzzle=config.puzzle,
            params=config.params,
            obs=config.obs_type,
            pixel_size=config.pixel_size,
            max_steps=config.max_steps,
            early_term=config.early_term,
            seed=config.seed,
        )
        self.action_names = tuple(made["action_names"])
        self.action_space = Discrete(made["actions"])
        spec = self._client.request(cmd="spec")
        self.observation_space = self._space_from_schema(spec["observation"])

    def _space_from_schema(self, schema: dict):
        if schema["type"] == "pixels":
            return Box(0, 255, tuple(schema["shape"]), np.uint8)
        spaces = {}
        for key, meta in schema["keys"].items():
            spaces[key] = Box(INT64_MIN, INT64_MAX, tuple(meta["shape"]), np.int64)
        return DictSpace(spaces)

    # -- standard environment surface --------------------------------------

    def reset(self, seed: Optional[int] = None, options=None):
        msg = {"cmd": "reset"}
        if seed is not None:
            msg["seed"] = seed
        out = self._client.request(**msg)
        return decode_observation(out["observation"]), decode_info(out["info"])

    def step(self, action):
        out = self._client.request(cmd="step", action=int(action))
        return (
            decode_observation(out["observation"]),
            float(out["reward"]),
            bool(out["terminated"]),
            bool(out["truncated"]),
            decode_info(out["info"]),
        )

    def action_mask(self) -> np.ndarray:
        out = self._client.request(cmd="mask")
        return np.asarray(out["mask"], dtype=bool)

    def close(self):
        self._client.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def make_adapter(config: AdapterConfig) -> PuzzleAdapter:
    return PuzzleAdapter(config)

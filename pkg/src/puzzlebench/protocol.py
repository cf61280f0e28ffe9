"""Line-delimited JSON protocol so external processes can drive environments.

One JSON request per line, one JSON response per line, strictly alternating.
Every response carries "v": 1 and "ok"; errors use {"ok": false, "error":
code}. A client-supplied "id" is echoed back. Pixel observations travel as
base64 of the row-major tensor bytes; state observations as plain arrays.
"""

from __future__ import annotations

import base64
import json
import socketserver
import sys

import numpy as np

from .env import (
    ActionOutOfRange,
    Env,
    EnvConfig,
    EpisodeOver,
    config_from_text,
)
from .params import ParamError
from .puzzles import GenerationFailure

PROTOCOL_VERSION = 1


def _jsonable_obs(obs) -> dict | list:
    if isinstance(obs, np.ndarray):  # pixel tensor
        return {
            "shape": list(obs.shape),
            "dtype": "uint8",
            "b64": base64.b64encode(obs.tobytes()).decode("ascii"),
        }
    out = {}
    for key, value in obs.items():
        out[key] = value.tolist() if isinstance(value, np.ndarray) else value
    return out


def _jsonable_info(info: dict) -> dict:
    return {
        "puzzle_state": _jsonable_obs(info["puzzle_state"]),
        "action_mask": [bool(b) for b in info["action_mask"]],
    }


def _obs_schema(env: Env) -> dict:
    if env.config.obs_type == "pixels":
        s = env.config.pixel_size
        return {"type": "pixels", "shape": [3, s, s]}
    obs, _ = _peek_schema_obs(env)
    keys = {}
    for key, value in obs.items():
        if isinstance(value, np.ndarray):
            keys[key] = {"shape": list(value.shape)}
        else:
            keys[key] = {"shape": []}
    return {"type": "state", "keys": keys}


def _peek_schema_obs(env: Env):
    """A deterministic sample observation for schema reporting (seed 0)."""
    probe = Env(env.config)
    obs, info = probe.reset(seed_override=0)
    state_obs = info["puzzle_state"]
    return state_obs, info


class Session:
    """One environment behind one request/response stream."""

    def __init__(self):
        self.env: Env | None = None

    def handle_line(self, line: str) -> str:
        try:
            msg = json.loads(line)
        except json.JSONDecodeError:
            msg = None
        if not isinstance(msg, dict):
            response = {"ok": False, "error": "parse_error"}
        else:
            try:
                response = self._dispatch(msg)
            except Exception as exc:  # never crash the loop
                response = {"ok": False, "error": "internal", "detail": str(exc)}
            req_id = msg.get("id")
            if req_id is not None:
                response["id"] = req_id
        response["v"] = PROTOCOL_VERSION
        return json.dumps(response)

    def _dispatch(self, msg: dict) -> dict:
        handler = {
            "spec": self._cmd_spec,
            "make": self._cmd_make,
            "reset": self._cmd_reset,
            "step": self._cmd_step,
            "mask": self._cmd_mask,
            "close": self._cmd_close,
        }.get(msg.get("cmd"))
        if handler is None:
            return {"ok": False, "error": "unknown_cmd"}
        return handler(msg)

    # -- commands ---------------------------------------------------------

    def _cmd_make(self, msg: dict) -> dict:
        try:
            puzzle = msg["puzzle"]
            params_text = msg.get("params", "")
            overrides = {}
            if "obs" in msg:
                overrides["obs_type"] = msg["obs"]
            if "pixel_size" in msg:
                overrides["pixel_size"] = int(msg["pixel_size"])
            if "max_steps" in msg and msg["max_steps"] is not None:
                overrides["max_steps"] = int(msg["max_steps"])
            if "early_term" in msg and msg["early_term"] is not None:
                overrides["repeat_threshold"] = int(msg["early_term"])
            if "seed" in msg and msg["seed"] is not None:
                overrides["base_seed"] = int(msg["seed"])
            config = config_from_text(puzzle, params_text, **overrides)
            env = Env(config)
        except (ParamError, KeyError, TypeError, ValueError) as exc:
            return {"ok": False, "error": "bad_params", "detail": str(exc)}
        self.env = env
        return {
            "ok": True,
            "puzzle": env.config.puzzle_id,
            "actions": env.cardinality,
            "action_names": list(env.action_names),
            "obs_type": env.config.obs_type,
            "pixel_size": env.config.pixel_size,
        }

    def _cmd_spec(self, msg: dict) -> dict:
        env = self.env
        if env is None:
            if "puzzle" not in msg:
                return {"ok": False, "error": "no_env"}
            try:
                config = config_from_text(
                    msg["puzzle"],
                    msg.get("params", ""),
                    obs_type=msg.get("obs", "state"),
                    pixel_size=int(msg.get("pixel_size", 128)),
                )
                env = Env(config)
            except (ParamError, TypeError, ValueError) as exc:
                return {"ok": False, "error": "bad_params", "detail": str(exc)}
        try:
            schema = _obs_schema(env)
        except GenerationFailure as exc:
            return {"ok": False, "error": "bad_params", "detail": str(exc)}
        return {
            "ok": True,
            "puzzle": env.config.puzzle_id,
            "actions": env.cardinality,
            "action_names": list(env.action_names),
            "observation": schema,
        }

    def _cmd_reset(self, msg: dict) -> dict:
        if self.env is None:
            return {"ok": False, "error": "no_env"}
        seed = msg.get("seed")
        try:
            obs, info = self.env.reset(None if seed is None else int(seed))
        except (TypeError, ValueError) as exc:
            return {"ok": False, "error": "bad_params", "detail": str(exc)}
        except GenerationFailure as exc:
            return {"ok": False, "error": "generation_failure", "detail": str(exc)}
        return {
            "ok": True,
            "observation": _jsonable_obs(obs),
            "info": _jsonable_info(info),
        }

    def _cmd_step(self, msg: dict) -> dict:
        if self.env is None:
            return {"ok": False, "error": "no_env"}
        action = msg.get("action")
        if not isinstance(action, int) or isinstance(action, bool):
            return {"ok": False, "error": "bad_action"}
        try:
            result = self.env.step(action)
        except ActionOutOfRange:
            return {"ok": False, "error": "bad_action"}
        except EpisodeOver:
            return {"ok": False, "error": "episode_over"}
        return {
            "ok": True,
            "observation": _jsonable_obs(result.observation),
            "reward": result.reward,
            "terminated": result.terminated,
            "truncated": result.truncated,
            "info": _jsonable_info(result.info),
        }

    def _cmd_mask(self, msg: dict) -> dict:
        if self.env is None:
            return {"ok": False, "error": "no_env"}
        try:
            mask = self.env.action_mask()
        except EpisodeOver:
            return {"ok": False, "error": "episode_over"}
        return {"ok": True, "mask": [bool(b) for b in mask]}

    def _cmd_close(self, msg: dict) -> dict:
        self.env = None
        return {"ok": True, "closed": True}


def serve_stream(reader, writer) -> None:
    """Run one session over text streams until EOF."""
    session = Session()
    for line in reader:
        line = line.strip()
        if not line:
            continue
        writer.write(session.handle_line(line) + "\n")
        writer.flush()


def serve_stdio() -> None:
    serve_stream(sys.stdin, sys.stdout)


class _TCPHandler(socketserver.StreamRequestHandler):
    def handle(self):
        reader = (raw.decode("utf-8", "replace") for raw in self.rfile)

        class _W:
            def __init__(self, wfile):
                self.wfile = wfile

            def write(self, text):
                self.wfile.write(text.encode("utf-8"))

            def flush(self):
                self.wfile.flush()

        serve_stream(reader, _W(self.wfile))


class ThreadingTCPServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


def serve_tcp(host: str, port: int) -> None:
    with ThreadingTCPServer((host, port), _TCPHandler) as server:
        server.serve_forever()

"""Protocol client: a spawned server subprocess (default) or a TCP peer."""

from __future__ import annotations

import base64
import json
import socket
import subprocess
import sys

import numpy as np

PROTOCOL_VERSION = 1


class ConnectionFailed(RuntimeError):
    pass


class ProtocolVersionMismatch(RuntimeError):
    pass


class ProtocolError(RuntimeError):
    """The server answered ok=false."""

    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


def default_server_command() -> list[str]:
    return [sys.executable, "-m", "puzzlebench.cli", "serve"]


class ProtocolClient:
    """One request/response session; callers serialize access."""

    def __init__(self, command: list[str] | None = None, address: str | None = None):
        self._proc = None
        self._sock = None
        self._next_id = 0
        if address:
            host, _, port = address.rpartition(":")
            try:
                self._sock = socket.create_connection((host, int(port)), timeout=30)
            except OSError as exc:
                raise ConnectionFailed(str(exc)) from exc
            self._reader = self._sock.makefile("r", encoding="utf-8")
            self._writer = self._sock.makefile("w", encoding="utf-8")
        else:
            try:
                self._proc = subprocess.Popen(
                    command or default_server_command(),
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    text=True,
                )
            except OSError as exc:
                raise ConnectionFailed(str(exc)) from exc
            self._reader = self._proc.stdout
            self._writer = self._proc.stdin

    def request(self, **msg) -> dict:
        self._next_id += 1
        msg["id"] = self._next_id
        try:
            self._writer.write(json.dumps(msg) + "\n")
            self._writer.flush()
            line = self._reader.readline()
        except (OSError, ValueError) as exc:
            raise ConnectionFailed(str(exc)) from exc
        if not line:
            raise ConnectionFailed("server closed the stream")
        response = json.loads(line)
        if response.get("v") != PROTOCOL_VERSION:
            raise ProtocolVersionMismatch(f"server speaks v={response.get('v')}")
        if response.get("id") != self._next_id:
            raise ProtocolError("id_mismatch", f"got {response.get('id')}")
        if not response.get("ok"):
            raise ProtocolError(response.get("error", "unknown"), response.get("detail", ""))
        return response

    def close(self) -> None:
        try:
            if self._writer and not self._writer.closed:
                try:
                    self._writer.write(json.dumps({"cmd": "close"}) + "\n")
                    self._writer.flush()
                except (OSError, ValueError):
                    pass
        finally:
            if self._proc is not None:
                self._proc.stdin.close()
                self._proc.wait(timeout=10)
                self._proc = None
            if self._sock is not None:
                self._sock.close()
                self._sock = None


def decode_observation(payload):
    """Wire observation -> numpy pixel tensor or dict of arrays/ints."""
    if isinstance(payload, dict) and "b64" in payload:
        raw = base64.b64decode(payload["b64"])
        return np.frombuffer(raw, dtype=np.uint8).reshape(payload["shape"]).copy()
    out = {}
    for key, value in payload.items():
        out[key] = np.asarray(value, dtype=np.int64) if isinstance(value, list) else int(value)
    return out


def decode_info(payload: dict) -> dict:
    return {
        "puzzle_state": decode_observation(payload["puzzle_state"]),
        "action_mask": np.asarray(payload["action_mask"], dtype=bool),
    }

"""Client adapter presenting puzzlebench servers as standard RL envs."""

from .adapter import AdapterConfig, PuzzleAdapter, make_adapter
from .checker import check_env
from .client import (
    ConnectionFailed,
    ProtocolClient,
    ProtocolError,
    ProtocolVersionMismatch,
)

__all__ = [
    "AdapterConfig",
    "ConnectionFailed",
    "ProtocolClient",
    "ProtocolError",
    "ProtocolVersionMismatch",
    "PuzzleAdapter",
    "check_env",
    "make_adapter",
]

__version__ = "0.1.0"

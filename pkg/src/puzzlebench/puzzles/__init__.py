"""The ten puzzle implementations plus the shared interface and registry."""

from . import (  # noqa: F401  (import for registration side effect)
    cube,
    fifteen,
    flip,
    flood,
    net,
    netslide,
    samegame,
    sixteen,
    twiddle,
    untangle,
)
from .base import (
    GENERATION_RETRIES,
    REGISTRY,
    GenerationFailure,
    OracleBudgetExceeded,
    Puzzle,
    Status,
    get_puzzle,
)

PUZZLE_IDS = tuple(sorted(REGISTRY))

__all__ = [
    "GENERATION_RETRIES",
    "PUZZLE_IDS",
    "REGISTRY",
    "GenerationFailure",
    "OracleBudgetExceeded",
    "Puzzle",
    "Status",
    "get_puzzle",
    "repetition_key",
]


def repetition_key(puzzle_id: str, state) -> bytes:
    """Canonical byte serialization of the logical state for revisit counting.

    Counters and undo history are excluded; cursor and selection marks are
    included. Equal keys hold exactly when the included fields are equal.
    """
    fields = get_puzzle(puzzle_id).repetition_fields(state)
    return repr(fields).encode("ascii")

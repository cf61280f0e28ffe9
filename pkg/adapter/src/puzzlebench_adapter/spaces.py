"""Observation/action space descriptions.

When gymnasium is installed its space classes are used directly, so the
adapter slots into existing training stacks; otherwise these minimal
stand-ins provide the same constructor shapes and `contains`.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised only where gymnasium exists
    import gymnasium.spaces as _gym_spaces

    Discrete = _gym_spaces.Discrete
    Box = _gym_spaces.Box
    DictSpace = _gym_spaces.Dict
    HAVE_GYMNASIUM = True
except ImportError:
    HAVE_GYMNASIUM = False

    class Discrete:
        def __init__(self, n: int):
            self.n = int(n)

        def contains(self, x) -> bool:
            try:
                xi = int(x)
            except (TypeError, ValueError):
                return False
            return 0 <= xi < self.n

        def sample(self, rng=None) -> int:
            rng = rng or np.random.default_rng()
            return int(rng.integers(self.n))

        def __repr__(self):
            return f"Discrete({self.n})"

    class Box:
        def __init__(self, low, high, shape, dtype):
            self.low = low
            self.high = high
            self.shape = tuple(shape)
            self.dtype = np.dtype(dtype)

        def contains(self, x) -> bool:
            arr = np.asarray(x)
            if arr.shape != self.shape:
                return False
            if not np.can_cast(arr.dtype, self.dtype, casting="same_kind"):
                return False
            return bool((arr >= self.low).all() and (arr <= self.high).all())

        def __repr__(self):
            return f"Box(shape={self.shape}, dtype={self.dtype})"

    class DictSpace:
        def __init__(self, spaces: dict):
            self.spaces = dict(spaces)

        def contains(self, x) -> bool:
            if not isinstance(x, dict) or set(x) != set(self.spaces):
                return False
            return all(space.contains(x[key]) for key, space in self.spaces.items())

        def __getitem__(self, key):
            return self.spaces[key]

        def __repr__(self):
            return f"Dict({list(self.spaces)})"

"""Puzzle parameter strings: parse `<params>[#<seed>]`, format the canonical form.

The grammar is a dimension pair `<w>x<h>` (a bare `<n>` for Untangle, a `c`
solid prefix for Cube), followed by letter-keyed integers (`b1`, `c6`, `m5`,
`n2`, `s2`) and bare flags (`c`, `r`, plus difficulty markers `de`/`dt` which
are recorded but inert for the supported puzzles).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

MAX_SEED = 0xFFFFFFFFFFFFFFFF

PUZZLES = (
    "cube",
    "fifteen",
    "flip",
    "flood",
    "net",
    "netslide",
    "samegame",
    "sixteen",
    "twiddle",
    "untangle",
)


class ParamError(ValueError):
    """Base class for parameter string rejections."""


class UnknownPuzzle(ParamError):
    pass


class MalformedParams(ParamError):
    pass


class MalformedSeed(ParamError):
    pass


class InvalidParamCombination(ParamError):
    pass


@dataclass(frozen=True)
class ParamMap:
    """Typed generation parameters for one puzzle instance."""

    width: int = 0
    height: int = 0
    colors: int = 0
    extra_moves: int = 0
    barrier_level: int = 0
    block_size: int = 0
    group_min: int = 0
    points: int = 0
    flags: frozenset[str] = field(default_factory=frozenset)


# Which letter-keyed integer tokens each puzzle accepts, and the field they
# fill. Keyed tokens always take a decimal integer argument.
_KEYED: dict[str, dict[str, str]] = {
    "cube": {},
    "fifteen": {},
    "flip": {},
    "flood": {"c": "colors", "m": "extra_moves"},
    "net": {"b": "barrier_level"},
    "netslide": {"b": "barrier_level"},
    "samegame": {"c": "colors", "s": "group_min"},
    "sixteen": {},
    "twiddle": {"n": "block_size"},
    "untangle": {},
}

# Bare single-letter flags each puzzle accepts ('de'/'dt' allowed everywhere).
_FLAGS: dict[str, frozenset[str]] = {
    "cube": frozenset(),
    "fifteen": frozenset(),
    "flip": frozenset({"c"}),
    "flood": frozenset(),
    "net": frozenset(),
    "netslide": frozenset(),
    "samegame": frozenset(),
    "sixteen": frozenset(),
    "twiddle": frozenset({"r"}),
    "untangle": frozenset(),
}

# Canonical emission order for keyed tokens.
_KEY_ORDER = ("b", "c", "m", "n", "s")


def _check_puzzle(puzzle_id: str) -> None:
    if puzzle_id not in PUZZLES:
        raise UnknownPuzzle(f"unknown puzzle {puzzle_id!r}")


def _is_digit(ch: str) -> bool:
    return "0" <= ch <= "9"


def _read_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and _is_digit(text[pos]):
        pos += 1
    if pos == start:
        raise MalformedParams(f"expected integer at position {start} in {text!r}")
    return int(text[start:pos]), pos


def parse_params(puzzle_id: str, text: str) -> tuple[ParamMap, int | None]:
    """Parse a parameter string, returning (ParamMap, seed or None).

    The seed is the decimal suffix after '#'; it never affects the ParamMap.
    """
    _check_puzzle(puzzle_id)
    if not text:
        raise MalformedParams("empty parameter string")

    seed: int | None = None
    if "#" in text:
        text, _, seed_text = text.partition("#")
        if not seed_text or not all(_is_digit(c) for c in seed_text):
            raise MalformedSeed(f"seed must be a decimal integer, got {seed_text!r}")
        seed = int(seed_text)
        if seed > MAX_SEED:
            raise MalformedSeed("seed exceeds 64 bits")
        if not text:
            raise MalformedParams("missing parameters before '#'")

    pos = 0
    p = ParamMap()

    if puzzle_id == "cube":
        # Solid selector prefix; only the cube solid is supported.
        if pos >= len(text) or not text[pos].isalpha():
            raise MalformedParams("cube params need a solid prefix, e.g. 'c3x3'")
        if text[pos] != "c":
            raise MalformedParams(f"unsupported solid {text[pos]!r}; only 'c' (cube)")
        pos += 1

    if puzzle_id == "untangle":
        points, pos = _read_int(text, pos)
        if points < 4:
            raise MalformedParams("untangle needs at least 4 points")
        p = replace(p, points=points)
    else:
        width, pos = _read_int(text, pos)
        if pos >= len(text) or text[pos] != "x":
            raise MalformedParams(f"expected 'x' after width in {text!r}")
        height, pos = _read_int(text, pos + 1)
        if width < 1 or height < 1:
            raise MalformedParams("dimensions must be at least 1")
        p = replace(p, width=width, height=height)

    keyed = _KEYED[puzzle_id]
    flags: set[str] = set()
    seen_keys: set[str] = set()
    while pos < len(text):
        ch = text[pos]
        if not ch.isalpha():
            raise MalformedParams(f"unexpected character {ch!r} in {text!r}")
        if ch == "d" and pos + 1 < len(text) and text[pos + 1] in "et":
            flags.add(text[pos : pos + 2])
            pos += 2
            continue
        if ch in keyed and pos + 1 < len(text) and _is_digit(text[pos + 1]):
            if ch in seen_keys:
                raise MalformedParams(f"duplicate token {ch!r} in {text!r}")
            seen_keys.add(ch)
            value, pos = _read_int(text, pos + 1)
            p = replace(p, **{keyed[ch]: value})
            continue
        if ch in _FLAGS[puzzle_id]:
            if ch in flags:
                raise MalformedParams(f"duplicate flag {ch!r} in {text!r}")
            flags.add(ch)
            pos += 1
            continue
        raise MalformedParams(f"unknown token {ch!r} for {puzzle_id} in {text!r}")

    p = replace(p, flags=frozenset(flags))
    p = _apply_defaults(puzzle_id, p)
    _validate(puzzle_id, p)
    return p, seed


def _apply_defaults(puzzle_id: str, p: ParamMap) -> ParamMap:
    if puzzle_id == "flood" and p.colors == 0:
        p = replace(p, colors=6)
    if puzzle_id == "samegame":
        if p.colors == 0:
            p = replace(p, colors=3)
        if p.group_min == 0:
            p = replace(p, group_min=2)
    if puzzle_id == "twiddle" and p.block_size == 0:
        p = replace(p, block_size=2)
    return p


def _validate(puzzle_id: str, p: ParamMap) -> None:
    if puzzle_id == "untangle":
        if p.points < 4:
            raise MalformedParams("untangle needs at least 4 points")
        return
    if p.width < 1 or p.height < 1:
        raise MalformedParams("dimensions must be at least 1")
    if puzzle_id in ("flood", "samegame") and p.colors < 2:
        raise MalformedParams(f"{puzzle_id} needs at least 2 colors")
    if puzzle_id == "twiddle":
        if p.block_size < 2:
            raise MalformedParams("twiddle block size must be at least 2")
        if p.block_size > p.width or p.block_size > p.height:
            raise InvalidParamCombination("twiddle block does not fit the grid")
    if puzzle_id == "fifteen" and p.width * p.height < 2:
        raise InvalidParamCombination("fifteen needs at least 2 cells")
    if puzzle_id == "cube" and p.width * p.height < 7:
        # 6 blue cells plus a free starting cell.
        raise InvalidParamCombination("cube grid needs at least 7 cells")
    if puzzle_id == "samegame" and p.group_min < 1:
        raise MalformedParams("samegame group minimum must be positive")


def format_params(puzzle_id: str, p: ParamMap) -> str:
    """Emit the canonical token order: dims, keyed ints (alphabetical), flags."""
    _check_puzzle(puzzle_id)
    _validate(puzzle_id, p)
    parts: list[str] = []
    if puzzle_id == "cube":
        parts.append("c")
    if puzzle_id == "untangle":
        parts.append(str(p.points))
    else:
        parts.append(f"{p.width}x{p.height}")
    keyed = _KEYED[puzzle_id]
    for key in _KEY_ORDER:
        if key in keyed:
            value = getattr(p, keyed[key])
            if value:
                parts.append(f"{key}{value}")
    for flag in sorted(f for f in p.flags if len(f) == 1):
        if flag not in _FLAGS[puzzle_id]:
            raise InvalidParamCombination(f"flag {flag!r} invalid for {puzzle_id}")
        parts.append(flag)
    for flag in sorted(f for f in p.flags if len(f) == 2):
        if flag not in ("de", "dt"):
            raise InvalidParamCombination(f"flag {flag!r} invalid for {puzzle_id}")
        parts.append(flag)
    return "".join(parts)

"""Parameter grammar: reference strings, round-trips, rejection totality."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from puzzlebench.params import (
    MalformedParams,
    MalformedSeed,
    ParamError,
    ParamMap,
    UnknownPuzzle,
    format_params,
    parse_params,
)


def test_flood_with_seed():
    params, seed = parse_params("flood", "3x3c6m5#42")
    assert params.width == 3 and params.height == 3
    assert params.colors == 6 and params.extra_moves == 5
    assert seed == 42


def test_fifteen_plain():
    params, seed = parse_params("fifteen", "2x2")
    assert (params.width, params.height) == (2, 2)
    assert seed is None


def test_untangle_single_token():
    params, seed = parse_params("untangle", "6")
    assert params.points == 6 and seed is None


def test_zero_dimension_rejected():
    with pytest.raises(MalformedParams):
        parse_params("flood", "0x3c6m5")


@pytest.mark.parametrize(
    "puzzle,text",
    [
        ("flood", "3x3c6m5"),
        ("fifteen", "2x2"),
        ("fifteen", "4x4"),
        ("flip", "3x3c"),
        ("cube", "c3x3"),
        ("cube", "c4x4"),
        ("net", "2x2"),
        ("net", "5x5"),
        ("netslide", "2x3b1"),
        ("netslide", "3x3b1"),
        ("samegame", "2x3c3s2"),
        ("samegame", "5x5c3s2"),
        ("sixteen", "2x3"),
        ("sixteen", "3x3"),
        ("twiddle", "2x3n2"),
        ("untangle", "4"),
        ("untangle", "6"),
        ("flood", "12x12c6m5"),
    ],
)
def test_reference_strings_round_trip(puzzle, text):
    params, seed = parse_params(puzzle, text)
    assert seed is None
    assert format_params(puzzle, params) == text
    reparsed, _ = parse_params(puzzle, text)
    assert reparsed == params


def test_seed_isolation():
    for puzzle, text in [("flood", "3x3c6m5"), ("untangle", "4"), ("cube", "c3x3")]:
        base, _ = parse_params(puzzle, text)
        with_seed, seed = parse_params(puzzle, text + "#7")
        assert with_seed == base and seed == 7


def test_malformed_seed():
    with pytest.raises(MalformedSeed):
        parse_params("fifteen", "2x2#x7")
    with pytest.raises(MalformedSeed):
        parse_params("fifteen", "2x2#")
    with pytest.raises(MalformedSeed):
        parse_params("fifteen", "2x2#" + str(2**64))


def test_unknown_puzzle_and_tokens():
    with pytest.raises(UnknownPuzzle):
        parse_params("sudoku", "3x3")
    with pytest.raises(MalformedParams):
        parse_params("fifteen", "2x2z9")
    with pytest.raises(MalformedParams):
        parse_params("flood", "3x3q")
    with pytest.raises(MalformedParams):
        parse_params("fifteen", "")
    with pytest.raises(MalformedParams):
        parse_params("cube", "t3x3")  # unsupported solid


def test_difficulty_flags_recorded_and_inert():
    params, _ = parse_params("sixteen", "3x3de")
    assert "de" in params.flags
    assert format_params("sixteen", params) == "3x3de"


def test_twiddle_orientation_flag():
    params, _ = parse_params("twiddle", "3x3n2r")
    assert "r" in params.flags
    assert format_params("twiddle", params) == "3x3n2r"


def test_samegame_format_example():
    p = ParamMap(width=2, height=3, colors=3, group_min=2)
    assert format_params("samegame", p) == "2x3c3s2"


def test_twiddle_format_example():
    p = ParamMap(width=2, height=3, block_size=2)
    assert format_params("twiddle", p) == "2x3n2"


def test_untangle_format_example():
    assert format_params("untangle", ParamMap(points=4)) == "4"


# -- property: round-trip over generated valid maps -------------------------

_dims = st.integers(min_value=1, max_value=30)


@st.composite
def valid_param_map(draw):
    puzzle = draw(st.sampled_from(
        ["fifteen", "flip", "flood", "net", "netslide", "samegame",
         "sixteen", "twiddle", "untangle", "cube"]
    ))
    flags = set()
    kw = {}
    if puzzle == "untangle":
        kw["points"] = draw(st.integers(min_value=4, max_value=30))
    else:
        kw["width"] = draw(_dims)
        kw["height"] = draw(_dims)
    if puzzle == "fifteen" and kw["width"] * kw["height"] < 2:
        kw["width"] = 2
    if puzzle == "cube":
        kw["width"] = max(kw["width"], 3)
        kw["height"] = max(kw["height"], 3)
    if puzzle == "flood":
        kw["colors"] = draw(st.integers(min_value=2, max_value=9))
        kw["extra_moves"] = draw(st.integers(min_value=0, max_value=20))
    if puzzle == "samegame":
        kw["colors"] = draw(st.integers(min_value=2, max_value=9))
        kw["group_min"] = draw(st.integers(min_value=1, max_value=5))
    if puzzle in ("net", "netslide"):
        kw["barrier_level"] = draw(st.integers(min_value=0, max_value=3))
    if puzzle == "twiddle":
        kw["block_size"] = draw(
            st.integers(min_value=2, max_value=min(kw["width"], kw["height"]))
            if min(kw["width"], kw["height"]) >= 2
            else st.just(2)
        )
        if kw["block_size"] > min(kw["width"], kw["height"]):
            kw["width"] = kw["height"] = kw["block_size"]
        if draw(st.booleans()):
            flags.add("r")
    if puzzle == "flip" and draw(st.booleans()):
        flags.add("c")
    if draw(st.booleans()):
        flags.add(draw(st.sampled_from(["de", "dt"])))
    return puzzle, ParamMap(flags=frozenset(flags), **kw)


@given(valid_param_map())
@settings(max_examples=300, deadline=None)
def test_round_trip_property(case):
    puzzle, params = case
    text = format_params(puzzle, params)
    reparsed, seed = parse_params(puzzle, text)
    assert seed is None
    assert reparsed == params


@given(st.text(max_size=12))
@settings(max_examples=500, deadline=None)
def test_rejection_totality(text):
    """Arbitrary strings either parse fully or raise a typed ParamError."""
    for puzzle in ("flood", "untangle", "cube", "sixteen"):
        try:
            params, seed = parse_params(puzzle, text)
        except ParamError:
            continue
        assert format_params(puzzle, params) is not None

"""Acceptance gate: every criterion at its stated tolerance.

Each check prints one PASS/FAIL line (run with -s to watch them live).
The random-baseline campaign is the expensive part; its per-row stats are
computed once and shared with the masking comparison.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from puzzlebench.bench import evaluate, optimal_upper_bound
from puzzlebench.env import config_from_text
from puzzlebench.protocol import Session
from puzzlebench.puzzles import Puzzle, Status
from puzzlebench.rng import Rng

from conftest import ROWS, make_test_env

# Published random-policy reference: (mean successful steps, success %).
RANDOM_BASELINE = {
    ("fifteen", "2x2"): (54, 100.0),
    ("flood", "3x3c6m5"): (134, 97.4),
    ("net", "2x2"): (1279, 100.0),
    ("netslide", "2x3b1"): (766, 100.0),
    ("samegame", "2x3c3s2"): (76, 100.0),
    ("sixteen", "2x3"): (2908, 94.1),
    ("twiddle", "2x3n2"): (851, 100.0),
    ("untangle", "4"): (141, 100.0),
    ("flip", "3x3c"): (3138, 88.9),
    ("cube", "c3x3"): (4181, 66.9),
}

MEAN_RTOL = 0.35  # mean successful-episode steps within +/-35%
RATE_ATOL = 0.10  # success rate within +/-10 percentage points
EPISODES = 1000

_stats_cache: dict = {}


def baseline_stats(puzzle_id, params, policy):
    key = (puzzle_id, params, policy)
    if key not in _stats_cache:
        config = config_from_text(puzzle_id, params, max_steps=10_000)
        _stats_cache[key] = evaluate(config, policy, EPISODES, base_seed=0)
    return _stats_cache[key]


def report(name: str, ok: bool, detail: str = ""):
    print(f"{'PASS' if ok else 'FAIL'}: {name}" + (f"  ({detail})" if detail else ""))


# -- criterion: random-baseline reproduction ---------------------------------


@pytest.mark.parametrize("puzzle_id,params", list(RANDOM_BASELINE))
def test_random_baseline_reproduction(puzzle_id, params):
    ref_mean, ref_rate = RANDOM_BASELINE[(puzzle_id, params)]
    stats = baseline_stats(puzzle_id, params, "random")
    mean = stats.mean_steps_successful
    rate = stats.success_rate
    ok_mean = abs(mean - ref_mean) <= MEAN_RTOL * ref_mean
    ok_rate = abs(rate - ref_rate / 100.0) <= RATE_ATOL
    report(
        f"random baseline {puzzle_id} {params}",
        ok_mean and ok_rate,
        f"mean {mean:.0f} vs {ref_mean}, success {100 * rate:.1f}% vs {ref_rate}%",
    )
    assert ok_mean, f"mean {mean:.1f} outside +/-35% of {ref_mean}"
    assert ok_rate, f"success {100 * rate:.1f}% outside +/-10pp of {ref_rate}%"


def test_random_baseline_through_cli():
    proc = subprocess.run(
        [
            sys.executable, "-m", "puzzlebench.cli", "bench",
            "--puzzle", "fifteen", "--params", "2x2",
            "--episodes", "1000", "--max-steps", "10000",
            "--policy", "random",
        ],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    stats = json.loads(proc.stdout)["stats"]
    reference = baseline_stats("fifteen", "2x2", "random")
    ok = (
        stats["success_rate"] == reference.success_rate
        and abs(stats["mean_steps_successful"] - reference.mean_steps_successful) < 1e-9
    )
    report("bench CLI equals library evaluation", ok)
    assert ok


# -- criterion: masking benefit, directional ---------------------------------


@pytest.mark.parametrize("puzzle_id,params", list(RANDOM_BASELINE))
def test_masked_random_does_not_hurt(puzzle_id, params):
    unmasked = baseline_stats(puzzle_id, params, "random")
    masked = baseline_stats(puzzle_id, params, "random-masked")
    ok = masked.success_rate >= unmasked.success_rate - 0.02
    report(
        f"masking benefit {puzzle_id} {params}",
        ok,
        f"masked {100 * masked.success_rate:.1f}% vs unmasked {100 * unmasked.success_rate:.1f}%",
    )
    assert ok


# -- criterion: optimal table fidelity ----------------------------------------

OPTIMAL_REFERENCE = {
    ("cube", "c3x3"): 54,
    ("fifteen", "2x2"): 256,
    ("flip", "3x3c"): 63,
    ("flood", "3x3c6m5"): 63,
    ("net", "2x2"): 28,
    ("netslide", "2x3b1"): 48,
    ("netslide", "3x3b1"): 90,
    ("samegame", "2x3c3s2"): 42,
    ("samegame", "5x5c3s2"): 300,
    ("sixteen", "2x3"): 48,
    ("twiddle", "2x3n2"): 98,
    ("untangle", "4"): 150,
    ("untangle", "6"): 79,
}


def test_optimal_table_fidelity():
    mismatches = [
        (pid, params, optimal_upper_bound(pid, params), want)
        for (pid, params), want in OPTIMAL_REFERENCE.items()
        if optimal_upper_bound(pid, params) != want
    ]
    report("optimal table fidelity (13 rows)", not mismatches, str(mismatches))
    assert not mismatches


# -- criterion: property suites ------------------------------------------------


@pytest.mark.parametrize("puzzle_id,params", ROWS)
def test_property_a_generation_solvable_not_solved(puzzle_id, params):
    env = make_test_env(puzzle_id, params, base_seed=0)
    pz = env.puzzle
    for i in range(100):
        env.reset(seed_override=10_000 + i)
        assert pz.status(env.state) == Status.IN_PROGRESS, "initially solved"
        assert pz.verify_solvable(env.state), f"unsolvable instance at seed {10_000 + i}"
    report(f"property (a) solvability 100x {puzzle_id} {params}", True)


@pytest.mark.parametrize("puzzle_id,params", ROWS)
def test_property_b_mask_soundness_completeness(puzzle_id, params):
    env = make_test_env(puzzle_id, params, base_seed=1)
    pz = env.puzzle
    rng = Rng(2)
    states_checked = 0
    episode = 0
    while states_checked < 100:
        env.reset(seed_override=episode)
        episode += 1
        for _ in range(20):
            state = env.state
            mask = pz.action_mask(state)
            brute = Puzzle.action_mask(pz, state)
            assert np.array_equal(mask, brute)
            states_checked += 1
            if states_checked >= 100:
                break
            result = env.step(rng.below(env.cardinality))
            if result.terminated or result.truncated:
                break
    report(f"property (b) mask ground truth 100 states {puzzle_id} {params}", True)


def _obs_bytes(obs) -> bytes:
    if isinstance(obs, np.ndarray):
        return obs.tobytes()
    return repr(
        [(k, v.tobytes() if isinstance(v, np.ndarray) else v) for k, v in obs.items()]
    ).encode()


@pytest.mark.parametrize("obs_type", ["state", "pixels"])
def test_property_c_determinism_byte_identical(obs_type):
    for puzzle_id, params in RANDOM_BASELINE:
        rng = Rng(3)
        actions = None
        traces = []
        for _ in range(2):
            env = make_test_env(
                puzzle_id, params, base_seed=77, obs_type=obs_type
            )
            obs, info = env.reset()
            if actions is None:
                actions = [rng.below(env.cardinality) for _ in range(50)]
            trace = [_obs_bytes(obs)]
            for a in actions:
                result = env.step(a)
                trace.append(_obs_bytes(result.observation))
                if result.terminated or result.truncated:
                    break
            traces.append(trace)
        assert traces[0] == traces[1], f"{puzzle_id} {obs_type} diverged"
    report(f"property (c) determinism byte-identical [{obs_type}]", True)


def test_property_d_early_termination_exact_trigger():
    env = make_test_env(
        "fifteen", "2x2", base_seed=3, repeat_threshold=10, max_steps=10_000
    )
    _, info = env.reset()
    dead = int(np.flatnonzero(~info["action_mask"])[0])
    for visit in range(2, 11):
        result = env.step(dead)
        assert not result.truncated and not result.terminated
    result = env.step(dead)
    assert result.truncated and result.reward == 0.0
    report("property (d) early termination fires on the 11th visit exactly", True)


def test_property_e_fifteen_parity_walk():
    from test_fifteen import adjusted_parity

    env = make_test_env("fifteen", "4x4", base_seed=5, max_steps=20_000)
    env.reset()
    rng = Rng(6)
    parity = adjusted_parity(env.state)
    for _ in range(10_000):
        result = env.step(rng.below(4))
        assert adjusted_parity(env.state) == parity
        if result.terminated or result.truncated:
            env.reset()
            parity = adjusted_parity(env.state)
    report("property (e) fifteen parity invariant, 10^4-step walk", True)


def test_property_e_samegame_gravity_walk():
    from test_samegame import gravity_ok

    env = make_test_env("samegame", "5x5c3s2", base_seed=5)
    env.reset()
    rng = Rng(7)
    for _ in range(10_000):
        result = env.step(rng.below(6))
        assert gravity_ok(env.state.grid, 5, 5)
        if result.terminated or result.truncated:
            env.reset()
    report("property (e) samegame gravity invariant, 10^4-step walk", True)


def test_property_f_untangle_predicate_oracle_1000():
    from test_untangle import oracle_untangled

    from puzzlebench.puzzles.untangle import layout_untangled

    rng = Rng(8)
    for _ in range(1000):
        n = 4 + rng.below(4)
        cells = rng.sample_indices(24 * 24, n)
        pts = [(c % 24, c // 24) for c in cells]
        edges = set()
        for _ in range(n + rng.below(2 * n)):
            a, b = rng.below(n), rng.below(n)
            if a != b:
                edges.add(tuple(sorted((a, b))))
        edges = tuple(sorted(edges))
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        assert layout_untangled(xs, ys, edges) == oracle_untangled(xs, ys, edges)
    report("property (f) untangle predicate vs O(E^2) oracle, 1000 configs", True)


def test_property_g_pixel_shape_and_range():
    for puzzle_id, params in RANDOM_BASELINE:
        env = make_test_env(puzzle_id, params, base_seed=4, obs_type="pixels")
        obs, _ = env.reset()
        rng = Rng(11)
        for _ in range(10):
            assert obs.shape == (3, 128, 128)
            assert obs.dtype == np.uint8
            assert obs.min() >= 0 and obs.max() <= 255
            result = env.step(rng.below(env.cardinality))
            obs = result.observation
            if result.terminated or result.truncated:
                break
    report("property (g) pixel observations (3,128,128) in [0,255]", True)


# -- criterion: protocol fuzz ---------------------------------------------------


def test_protocol_fuzz_10k_lines():
    import random

    rnd = random.Random(1234)
    session = Session()
    session.handle_line(json.dumps({"cmd": "make", "puzzle": "flood", "params": "3x3c6m5"}))

    def junk_line(i):
        kind = i % 7
        if kind == 0:
            return "".join(chr(rnd.randrange(1, 0x300)) for _ in range(rnd.randrange(0, 40)))
        if kind == 1:
            return "{" + "".join(chr(rnd.randrange(32, 127)) for _ in range(rnd.randrange(0, 30)))
        if kind == 2:
            return json.dumps(rnd.choice([None, True, 1.5, [1, 2], "text"]))
        if kind == 3:
            return json.dumps({"cmd": rnd.choice(["", "step!", "MAKE", None, 7])})
        if kind == 4:
            return json.dumps({"cmd": "step", "action": rnd.choice([None, -5, 10**20, "x", 1.5, []])})
        if kind == 5:
            return json.dumps({"cmd": "make", "puzzle": rnd.choice(["", "x", 3]), "params": rnd.choice(["", "0x0", "zzz", 9])})
        return json.dumps({"cmd": "reset", "seed": rnd.choice(["no", -1, [], {}])})

    crashes = 0
    for i in range(10_000):
        raw = session.handle_line(junk_line(i))
        msg = json.loads(raw)
        if "ok" not in msg or msg.get("v") != 1:
            crashes += 1
    alive = json.loads(session.handle_line(json.dumps({"cmd": "reset"})))
    ok = crashes == 0 and alive["ok"]
    report("protocol fuzz 10^4 malformed lines, zero crashes", ok)
    assert ok

"""Command line front end.

Subcommands: bench (seeded evaluation campaign, JSON report), optimal
(reference upper bound lookup), play (ASCII debug stepper on stdin), gen
(instances as JSON lines), serve (wire protocol on stdio or TCP).
Exit codes: 0 success, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import (
    UnknownConfiguration,
    canonical_params_text,
    evaluate,
    make_policy,
    optimal_upper_bound,
)
from .env import DEFAULT_REPEAT_THRESHOLD, Env, EnvConfig, config_from_text
from .params import ParamError
from .puzzles import GenerationFailure, PUZZLE_IDS
from .raster import rasterize, write_png


class ConfigError(Exception):
    pass


def _build_config(args, **extra) -> EnvConfig:
    overrides = dict(extra)
    if getattr(args, "max_steps", None) is not None:
        overrides["max_steps"] = args.max_steps
    if getattr(args, "early_term", None) is not None:
        overrides["repeat_threshold"] = args.early_term
    if getattr(args, "obs", None):
        overrides["obs_type"] = args.obs
    if getattr(args, "seed", None) is not None:
        overrides["base_seed"] = args.seed
    try:
        return config_from_text(args.puzzle, args.params, **overrides)
    except (ParamError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def cmd_bench(args) -> int:
    config = _build_config(args)
    try:
        policy = make_policy(args.policy)
    except (ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
    records = [] if args.records else None
    stats = evaluate(
        config, policy, args.episodes, base_seed=args.seed or 0,
        record_sink=records,
    )
    report = {
        "config": {
            "puzzle": config.puzzle_id,
            "params": canonical_params_text(config),
            "obs": config.obs_type,
            "episodes": args.episodes,
            "max_steps": config.max_steps,
            "early_term": config.repeat_threshold,
            "policy": args.policy,
            "seed": args.seed or 0,
        },
        "stats": stats.as_dict(),
    }
    if records is not None:
        report["records"] = [
            {"seed": r.seed, "steps": r.steps, "outcome": r.outcome, "reward": r.reward}
            for r in records
        ]
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_optimal(args) -> int:
    try:
        steps = optimal_upper_bound(args.puzzle, args.params)
    except UnknownConfiguration as exc:
        raise ConfigError(str(exc)) from exc
    print(steps)
    return 0


def ascii_board(env: Env) -> str:
    """Plain-text dump of the current observation for interactive play."""
    obs = env.puzzle.encode(env.state)
    header = f"[{env.config.puzzle_id}] step={env.step_count}"
    for extra in ("moves_left", "move_count", "undo_depth"):
        if extra in obs:
            header += f" {extra}={int(obs[extra])}"
    lines = [header]
    grid_key = next(
        (k for k in ("grid", "tiles") if k in obs), None
    )
    if grid_key is not None and "width" in obs:
        w = int(obs["width"])
        cells = [int(v) for v in obs[grid_key]]
        for y in range(len(cells) // w):
            row = cells[y * w : (y + 1) * w]
            lines.append(" ".join(f"{v:3d}" for v in row))
    else:
        for key, value in obs.items():
            lines.append(f"  {key}: {np.asarray(value).tolist()}")
    if "cursor_pos" in obs:
        lines.append(f"cursor={np.asarray(obs['cursor_pos']).tolist()}")
    if "xs" in obs:
        pts = list(zip(np.asarray(obs["xs"]).tolist(), np.asarray(obs["ys"]).tolist()))
        lines.append(f"points={pts}")
        lines.append(f"edges={np.asarray(obs['edges']).tolist()} sel={int(obs['selected'])} grab={int(obs['grabbed'])}")
    return "\n".join(lines)


def cmd_play(args) -> int:
    config = _build_config(args)
    env = Env(config)
    env.reset(seed_override=args.seed)
    names = ", ".join(env.action_names)
    print(f"actions: {names}  (or indices; 'q' quits)")
    print(ascii_board(env))
    if args.png:
        write_png(args.png, rasterize(env.puzzle.render(env.state), config.pixel_size))
    for line in sys.stdin:
        token = line.strip()
        if not token:
            continue
        if token.lower() in ("q", "quit", "exit"):
            break
        try:
            action = int(token) if token.isdigit() else env.puzzle.action_index(token.upper())
        except ValueError:
            print(f"unknown action {token!r}; expected one of: {names}")
            continue
        result = env.step(action)
        print(ascii_board(env))
        print(
            f"reward={result.reward:+.1f} terminated={result.terminated} "
            f"truncated={result.truncated} mask={[int(b) for b in result.info['action_mask']]}"
        )
        if args.png:
            write_png(args.png, rasterize(env.puzzle.render(env.state), config.pixel_size))
        if result.terminated or result.truncated:
            print(f"episode over: {env.episode_status}")
            break
    return 0


def cmd_gen(args) -> int:
    config = _build_config(args)
    env = Env(config)
    for i in range(args.count):
        obs, info = env.reset(
            seed_override=None if args.seed is None else args.seed + i
        )
        state = {
            k: v.tolist() if isinstance(v, np.ndarray) else v
            for k, v in info["puzzle_state"].items()
        }
        print(json.dumps({
            "puzzle": config.puzzle_id,
            "params": canonical_params_text(config),
            "index": i,
            "state": state,
        }))
    return 0


def cmd_serve(args) -> int:
    from . import protocol

    if args.listen:
        host, _, port = args.listen.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"bad --listen address {args.listen!r}")
        protocol.serve_tcp(host, int(port))
    else:
        protocol.serve_stdio()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puzzlebench",
        description="Headless logic-puzzle RL environments and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_env_args(p, params_required=True):
        p.add_argument("--puzzle", required=True, choices=sorted(PUZZLE_IDS))
        p.add_argument("--params", required=params_required, default="")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("bench", help="run a seeded evaluation campaign")
    add_env_args(p)
    p.add_argument("--episodes", type=int, default=1000)
    p.add_argument("--max-steps", type=int, default=None, dest="max_steps")
    p.add_argument(
        "--policy", default="random",
        help="random | random-masked | script:<file>",
    )
    p.add_argument("--obs", choices=("state", "pixels"), default="state")
    p.add_argument(
        "--early-term", type=int, nargs="?", const=DEFAULT_REPEAT_THRESHOLD, default=None,
        dest="early_term", help="repeat threshold (default 10 when bare)",
    )
    p.add_argument("--records", action="store_true", help="include per-episode records")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("optimal", help="reference optimal upper bound")
    p.add_argument("--puzzle", required=True)
    p.add_argument("--params", required=True)
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("play", help="ASCII debug stepper (actions on stdin)")
    add_env_args(p)
    p.add_argument("--obs", choices=("state", "pixels"), default="state")
    p.add_argument("--png", default=None, help="dump the board to this PNG each step")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("gen", help="emit generated instances as JSON lines")
    add_env_args(p)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("serve", help="speak the wire protocol")
    p.add_argument("--listen", default=None, help="host:port (default: stdio)")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GenerationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line: ``affectq run``, ``affectq sweep`` and ``affectq stats``.

Exit codes: 0 on success, 1 on runtime errors (bad input files, unwritable
output, degenerate t-tests), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import artifacts
from .experiment import DEFAULT_EPSILONS, AgentKind, ExperimentConfig, run_agent, sweep
from .gridworld import DEFAULT_STEP_CAP
from .stats import paired_t_test

SEED_ENV = "AFFECTQ_SEED"


def _pos(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    return x, y


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _epsilons(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}") from None
    if any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError("epsilon values must lie in [0, 1]")
    return values


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, help=f"master seed (falls back to ${SEED_ENV})")
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=0.9)
    p.add_argument("--goal-reward", type=float, default=100.0)
    p.add_argument("--episodes", type=int, default=200)
    p.add_argument("--width", type=int, default=15)
    p.add_argument("--height", type=int, default=15)
    p.add_argument("--start", type=_pos, default=(0, 0), metavar="X,Y")
    p.add_argument("--goal", type=_pos, default=(6, 6), metavar="X,Y")
    p.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affectq", description="Q-learning with basic emotions on a pursuit grid.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one simulation of one agent")
    _common(run)
    run.add_argument("--agent", choices=[k.value for k in AgentKind], default="standard")
    run.add_argument("--epsilon", type=float, default=0.1)

    sw = sub.add_parser("sweep", help="both agents over the epsilon grid")
    _common(sw)
    sw.add_argument("--runs", type=int, default=20)
    sw.add_argument("--epsilon", type=_epsilons, default=DEFAULT_EPSILONS,
                    help="comma-separated epsilon values (default 0.1..0.9)")
    sw.add_argument("--workers", type=int, default=1)

    st = sub.add_parser("stats", help="paired t-test between two numeric column files")
    st.add_argument("file_a", type=Path)
    st.add_argument("file_b", type=Path)
    return parser


def _config(args, parser, epsilons) -> ExperimentConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        if env is None:
            parser.error(f"--seed is required (or set {SEED_ENV})")
        try:
            seed = _seed(env)
        except argparse.ArgumentTypeError as exc:
            parser.error(f"{SEED_ENV}: {exc}")
    try:
        cfg = ExperimentConfig(
            master_seed=seed, width=args.width, height=args.height, start=args.start,
            goal=args.goal, alpha=args.alpha, gamma=args.gamma, goal_reward=args.goal_reward,
            episodes=args.episodes, runs=getattr(args, "runs", 1), epsilons=epsilons,
            step_cap=args.step_cap)
        cfg.world()
        for e in cfg.epsilons:
            cfg.params(e)
    except ValueError as exc:
        parser.error(str(exc))
    return cfg


def read_column(path: Path) -> list[float]:
    """Numbers, one per line; a non-numeric first line is taken as a header."""
    values = []
    lines = [ln.strip() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    for i, line in enumerate(lines):
        try:
            values.append(float(line))
        except ValueError:
            if i == 0:
                continue
            raise ValueError(f"{path}: line {i + 1} is not a number: {line!r}") from None
    return values


def cmd_run(args, parser) -> int:
    cfg = _config(args, parser, (args.epsilon,))
    kind = AgentKind(args.agent)
    result = run_agent(cfg.world(), kind, cfg.params(args.epsilon), cfg.master_seed,
                       cfg.episodes, cfg.step_cap, cfg.prior_factor)
    args.out.mkdir(parents=True, exist_ok=True)
    path = artifacts.write_table(args.out, "episodes", artifacts.EPISODE_HEADER,
                                 artifacts.episode_rows(result), args.format)
    print(path)
    return 0


def cmd_sweep(args, parser) -> int:
    cfg = _config(args, parser, args.epsilon)
    if len(cfg.epsilons) < 2:
        parser.error("a sweep needs at least two epsilon values")
    table = sweep(cfg, workers=args.workers)
    args.out.mkdir(parents=True, exist_ok=True)
    for path in artifacts.write_sweep(table, args.out, args.format):
        print(path)
    return 0


def cmd_stats(args, parser) -> int:
    a, b = read_column(args.file_a), read_column(args.file_b)
    if len(a) != len(b):
        raise ValueError(f"column lengths differ: {len(a)} vs {len(b)}")
    print(json.dumps(paired_t_test(a, b).to_dict(), indent=2))
    return 0


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "stats": cmd_stats}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except (OSError, ValueError, ArithmeticError) as exc:
        print(f"affectq: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Episodes, runs and the epsilon sweep for the standard and affective agents."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .affective_policy import decide, execute_move
from .appraisal import EMOTIONS, AppraisalState, Emotion
from .gridworld import DEFAULT_STEP_CAP, GridPos, GridWorld
from .qcore import (LearningParams, QTable, Rng, derive_seed,
                    epsilon_greedy_explored, td_update)

log = logging.getLogger(__name__)

DEFAULT_EPSILONS: tuple[float, ...] = tuple(round(0.1 * k, 1) for k in range(1, 10))


class AgentKind(Enum):
    STANDARD = "standard"
    AFFECTIVE = "affective"

    @property
    def ordinal(self) -> int:
        return 0 if self is AgentKind.STANDARD else 1


@dataclass
class EpisodeRecord:
    index: int
    steps: int
    decisions: int
    random_decisions: int
    emotion_tally: tuple[int, int, int, int] = (0, 0, 0, 0)
    truncated: bool = False
    norm: float | None = None
    exp1_final: float | None = None
    act_final: float | None = None


def first_optimal_episode(steps: Sequence[int], optimal: int) -> int | None:
    """1-based index of the first episode that took exactly ``optimal`` steps."""
    for i, n in enumerate(steps, start=1):
        if n == optimal:
            return i
    return None


def total_steps_before_optimal(steps: Sequence[int], optimal: int) -> int:
    first = first_optimal_episode(steps, optimal)
    return sum(steps if first is None else steps[:first - 1])


def equivalent_epsilon(record: EpisodeRecord) -> float:
    """Fraction of the episode's decisions whose direction was random."""
    if record.decisions == 0:
        log.warning("episode %d has no decisions; equivalent epsilon reported as 0", record.index)
        return 0.0
    return record.random_decisions / record.decisions


@dataclass
class RunSummary:
    agent_kind: AgentKind
    epsilon: float
    seed: int
    optimal_steps: int
    episodes: list[EpisodeRecord]

    @property
    def steps(self) -> list[int]:
        return [e.steps for e in self.episodes]

    @property
    def first_optimal_episode(self) -> int | None:
        return first_optimal_episode(self.steps, self.optimal_steps)

    @property
    def total_steps_before_optimal(self) -> int:
        return total_steps_before_optimal(self.steps, self.optimal_steps)

    @property
    def mean_steps_per_episode(self) -> float:
        return float(np.mean(self.steps))


def run_episode(world: GridWorld, agent_kind: AgentKind, q: QTable,
                appraisal: AppraisalState | None, params: LearningParams, rng: Rng,
                index: int = 1, step_cap: int = DEFAULT_STEP_CAP) -> EpisodeRecord:
    if agent_kind is AgentKind.STANDARD:
        return _standard_episode(world, q, params, rng, index, step_cap)
    if appraisal is None:
        raise ValueError("the affective agent needs an AppraisalState")
    return _affective_episode(world, q, appraisal, params, rng, index, step_cap)


def _standard_episode(world, q, params, rng, index, step_cap):
    pos = world.start
    steps = n_random = 0
    truncated = False
    while True:
        a, explored = epsilon_greedy_explored(q, pos, params, rng)
        nxt, reward, done = world.step(pos, a)
        td_update(q, pos, a, reward, nxt, params)
        pos = nxt
        steps += 1
        n_random += explored
        if done:
            break
        if steps >= step_cap:
            truncated = True
            break
    return EpisodeRecord(index, steps, steps, n_random, truncated=truncated)


def _affective_episode(world, q, appraisal, params, rng, index, step_cap):
    appraisal.begin_episode(index)
    pos = world.start
    steps = decisions = n_random = 0
    tally = [0, 0, 0, 0]
    # (cell, step count on arrival), in visiting order
    arrivals: list[tuple[GridPos, int]] = [(pos, 0)]
    visited: list[GridPos] = []
    truncated = False
    while True:
        appraisal.on_step(steps, pos)
        emotion = appraisal.emotion()
        decision = decide(emotion, q, pos, rng)
        visited.clear()
        pos, moved, done = execute_move(world, q, pos, decision, params, visited)
        arrivals.extend((p, steps + k) for k, p in enumerate(visited, start=1))
        # a zero-speed decision still costs one step
        steps += moved if moved else 1
        decisions += 1
        tally[emotion] += 1
        n_random += decision.random_direction
        if done:
            break
        if steps >= step_cap:
            truncated = True
            steps = step_cap
            break
    appraisal.end_episode(steps, ((p, steps - at) for p, at in arrivals),
                          reached_goal=not truncated)
    return EpisodeRecord(index, steps, decisions, n_random, tuple(tally), truncated,
                         appraisal.norm, appraisal.exp1, appraisal.act)


def run_agent(world: GridWorld, agent_kind: AgentKind, params: LearningParams, seed: int,
              episodes: int = 200, step_cap: int = DEFAULT_STEP_CAP,
              prior_factor: float = 4.0) -> RunSummary:
    """One simulation: a fresh Q-table (and appraisal) carried across ``episodes``."""
    q = QTable(world.width, world.height)
    rng = Rng(seed)
    appraisal = (AppraisalState.for_world(world.optimal_steps(), prior_factor)
                 if agent_kind is AgentKind.AFFECTIVE else None)
    records = [run_episode(world, agent_kind, q, appraisal, params, rng, i, step_cap)
               for i in range(1, episodes + 1)]
    return RunSummary(agent_kind, params.epsilon, seed, world.optimal_steps(), records)


@dataclass(frozen=True)
class ExperimentConfig:
    master_seed: int
    width: int = 15
    height: int = 15
    start: tuple[int, int] = (0, 0)
    goal: tuple[int, int] = (6, 6)
    alpha: float = 0.1
    gamma: float = 0.9
    goal_reward: float = 100.0
    episodes: int = 200
    runs: int = 20
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    step_cap: int = DEFAULT_STEP_CAP
    prior_factor: float = 4.0

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "goal", tuple(self.goal))
        if any(not 0.0 <= e <= 1.0 for e in self.epsilons):
            raise ValueError("every epsilon must lie in [0, 1]")
        if self.episodes < 1 or self.runs < 1 or self.step_cap < 1:
            raise ValueError("episodes, runs and step_cap must be positive")

    def world(self) -> GridWorld:
        return GridWorld(self.width, self.height, GridPos(*self.start),
                         GridPos(*self.goal), self.goal_reward)

    def params(self, epsilon: float) -> LearningParams:
        return LearningParams(self.alpha, self.gamma, epsilon)

    def cell_seed(self, kind: AgentKind, eps_index: int, run_index: int) -> int:
        return derive_seed(self.master_seed, kind.ordinal, eps_index, run_index)


CellKey = tuple[AgentKind, int, int]  # (agent kind, epsilon index, run index)


@dataclass
class SweepTable:
    config: ExperimentConfig
    cells: dict[CellKey, RunSummary] = field(default_factory=dict)

    def runs(self, kind: AgentKind, eps_index: int) -> list[RunSummary]:
        return [self.cells[(kind, eps_index, r)] for r in range(self.config.runs)
                if (kind, eps_index, r) in self.cells]

    @property
    def agent_kinds(self) -> list[AgentKind]:
        return [k for k in AgentKind if any(key[0] is k for key in self.cells)]


def _run_cell(args) -> RunSummary:
    config, kind, eps_index, seed = args
    return run_agent(config.world(), kind, config.params(config.epsilons[eps_index]), seed,
                     config.episodes, config.step_cap, config.prior_factor)


def sweep(config: ExperimentConfig, workers: int = 1,
          agents: Iterable[AgentKind] = tuple(AgentKind),
          shared_epsilon_seeds: bool = False) -> SweepTable:
    """Run every (agent, epsilon, run) cell.

    With ``shared_epsilon_seeds`` every epsilon column reuses the seeds of the
    first one, which isolates the effect of epsilon from seed noise.
    """
    keys = [(kind, ei, r) for kind in agents
            for ei in range(len(config.epsilons)) for r in range(config.runs)]
    tasks = [(config, kind, ei, config.cell_seed(kind, 0 if shared_epsilon_seeds else ei, r))
             for kind, ei, r in keys]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_cell, tasks, chunksize=4))
    else:
        results = [_run_cell(t) for t in tasks]
    return SweepTable(config, dict(zip(keys, results)))


@dataclass
class SweepAggregate:
    epsilons: tuple[float, ...]
    mean_steps: dict[AgentKind, list[float]]
    mean_total_before_optimal: dict[AgentKind, list[float]]
    mean_first_optimal_episode: dict[AgentKind, float | None]
    # per episode index, averaged over every affective run
    emotion_fractions: list[tuple[float, float, float, float]]
    equivalent_epsilon: list[float]
    truncated_episodes: dict[AgentKind, int]

    def emotion_share(self, emotion: Emotion, first: int = 1, last: int | None = None) -> float:
        """Mean fraction of decisions under ``emotion`` over episodes first..last."""
        rows = self.emotion_fractions[first - 1:last]
        return float(np.mean([r[emotion] for r in rows])) if rows else 0.0


def aggregate(table: SweepTable) -> SweepAggregate:
    cfg = table.config
    n_eps = len(cfg.epsilons)
    mean_steps, mean_total, mean_first, truncated = {}, {}, {}, {}
    for kind in table.agent_kinds:
        mean_steps[kind] = [float(np.mean([r.steps for r in table.runs(kind, ei)]))
                            for ei in range(n_eps)]
        mean_total[kind] = [float(np.mean([r.total_steps_before_optimal
                                           for r in table.runs(kind, ei)]))
                            for ei in range(n_eps)]
        firsts = [r.first_optimal_episode for key, r in table.cells.items() if key[0] is kind]
        found = [f for f in firsts if f is not None]
        mean_first[kind] = float(np.mean(found)) if found else None
        truncated[kind] = sum(e.truncated for key, r in table.cells.items() if key[0] is kind
                              for e in r.episodes)

    affective = [r for key, r in sorted(table.cells.items(), key=lambda kv: (kv[0][1], kv[0][2]))
                 if key[0] is AgentKind.AFFECTIVE]
    fractions: list[tuple[float, float, float, float]] = []
    eq_eps: list[float] = []
    if affective:
        tallies = np.array([[e.emotion_tally for e in r.episodes] for r in affective], dtype=float)
        decisions = np.array([[e.decisions for e in r.episodes] for r in affective], dtype=float)
        share = tallies / np.maximum(decisions, 1.0)[:, :, None]
        fractions = [tuple(float(v) for v in row) for row in share.mean(axis=0)]
        eq_eps = [float(np.mean([equivalent_epsilon(r.episodes[i]) for r in affective]))
                  for i in range(cfg.episodes)]
    return SweepAggregate(cfg.epsilons, mean_steps, mean_total, mean_first,
                          fractions, eq_eps, truncated)


__all__ = [
    "AgentKind", "EpisodeRecord", "RunSummary", "SweepTable", "SweepAggregate",
    "ExperimentConfig", "DEFAULT_EPSILONS", "EMOTIONS", "run_episode", "run_agent", "sweep",
    "aggregate", "first_optimal_episode", "total_steps_before_optimal", "equivalent_epsilon",
]

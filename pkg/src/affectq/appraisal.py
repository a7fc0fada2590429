"""Emotional appraisal for the affective agent.

Three quantities are tracked, all measured in steps:

* ``norm``: the step count a power-law fit of past episodes predicts for the
  current episode,
* ``exp1``: the expected step count, starting at ``norm`` and growing once
  per decision taken after the episode has run past ``norm``,
* ``act``: the shortest path to the goal known from the current cell.

Their relative order selects one of four emotions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .gridworld import GridPos


class Emotion(IntEnum):
    JOY = 0
    SADNESS = 1
    ANGER = 2
    FEAR = 3


EMOTIONS: tuple[Emotion, ...] = tuple(Emotion)


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class PowerFit:
    a: float
    b: float

    def __call__(self, t: float) -> float:
        return self.a * t ** self.b


def fit_power_regression(history: Sequence[float]) -> PowerFit:
    """Fit ``y = a * t**b`` to ``history`` (indexed t = 1..n) by OLS on logs.

    Values only need to be positive; step histories are always >= 1.
    """
    if len(history) < 2:
        raise InsufficientDataError("power regression needs at least two points")
    y = np.asarray(history, dtype=float)
    if not np.all(y > 0) or not np.all(np.isfinite(y)):
        raise ValueError("power regression needs positive finite values")
    lt = np.log(np.arange(1, len(y) + 1, dtype=float))
    ly = np.log(y)
    lt_c = lt - lt.mean()
    b = float(np.dot(lt_c, ly - ly.mean()) / np.dot(lt_c, lt_c))
    a = math.exp(float(ly.mean()) - b * float(lt.mean()))
    return PowerFit(a, b)


def classify(act: float, exp1: float, norm: float) -> Emotion:
    """Map an (act, exp1, norm) triple to an emotion; first matching rule wins."""
    if exp1 < norm:
        return Emotion.FEAR
    if act < norm:
        return Emotion.ANGER if exp1 > act else Emotion.SADNESS
    if act > norm:
        return Emotion.JOY
    # act == norm and exp1 >= norm: no rule fires
    return Emotion.SADNESS


@dataclass
class AppraisalState:
    """Per-run appraisal bookkeeping.

    ``prior`` is the step count assumed before any episode has finished. It
    seeds both ``norm`` and the carried-over ``act`` so the very first
    appraisal is uninformative (``act == norm``).
    """

    prior: float
    history: list[int] = field(default_factory=list)
    dist_best: dict[GridPos, int] = field(default_factory=dict)
    norm: float = 0.0
    exp1: float = 0.0
    act: float = 0.0
    last_act: float = 0.0

    def __post_init__(self):
        if not self.prior > 0:
            raise ValueError("prior must be positive")
        self.norm = self.exp1 = self.act = self.last_act = float(self.prior)

    @classmethod
    def for_world(cls, optimal_steps: int, prior_factor: float = 4.0) -> AppraisalState:
        return cls(prior=prior_factor * optimal_steps)

    def predicted_norm(self, episode_index: int) -> float:
        n = len(self.history)
        if n == 0:
            return float(self.prior)
        if n == 1:
            return float(self.history[0])
        return fit_power_regression(self.history)(episode_index)

    def begin_episode(self, episode_index: int) -> None:
        self.norm = self.predicted_norm(episode_index)
        self.exp1 = self.norm

    def on_step(self, steps_so_far: int, pos: GridPos) -> None:
        if steps_so_far > self.norm:
            self.exp1 += 1
        known = self.dist_best.get(pos)
        self.act = float(known) if known is not None else self.last_act
        self.last_act = self.act

    def emotion(self) -> Emotion:
        return classify(self.act, self.exp1, self.norm)

    def end_episode(self, steps_taken: int,
                    trajectory: Iterable[tuple[GridPos, int]] = (),
                    reached_goal: bool = True) -> None:
        """Record a finished episode.

        ``trajectory`` yields ``(pos, steps_remaining)`` in visiting order;
        only the first visit of each cell counts. It is ignored for episodes
        that were cut off before reaching the goal.
        """
        if steps_taken < 1:
            raise ValueError("an episode takes at least one step")
        self.history.append(int(steps_taken))
        if not reached_goal:
            return
        seen: set[GridPos] = set()
        best = self.dist_best
        for pos, remaining in trajectory:
            if pos in seen:
                continue
            seen.add(pos)
            old = best.get(pos)
            if old is None or remaining < old:
                best[pos] = remaining

"""Tabular Q-learning: TD update, greedy selection and the epsilon-greedy policy."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gridworld import ACTIONS, Action, GridPos

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finalizer (a bijection on 64-bit integers)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *parts: int) -> int:
    """Child seed for a sub-stream; each part is folded in through ``mix64``."""
    s = mix64(master + GOLDEN_GAMMA)
    for p in parts:
        s = mix64((s ^ (p & MASK64)) + GOLDEN_GAMMA)
    return s


class Rng:
    """SplitMix64 generator.

    Chosen over ``random.Random``/numpy because the whole stream is defined by
    a dozen lines of integer arithmetic, so results can be replayed anywhere.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = s = (self.state + GOLDEN_GAMMA) & MASK64
        s = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        s = ((s ^ (s >> 27)) * 0x94D049BB133111EB) & MASK64
        return s ^ (s >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by 128-bit multiply-high."""
        return (self.next_u64() * n) >> 64


@dataclass(frozen=True)
class LearningParams:
    alpha: float = 0.1
    gamma: float = 0.9
    epsilon: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError(f"gamma must be in [0, 1), got {self.gamma}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {self.epsilon}")


class QTable:
    """Dense (state, action) -> quality table for a ``width`` x ``height`` grid.

    Every entry starts at 0, which is the same as reading an absent entry of a
    sparse table. Values live in one flat list indexed ``(y*width + x)*4 + a``.
    """

    __slots__ = ("width", "height", "values")

    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.values = [0.0] * (width * height * len(ACTIONS))

    def _base(self, s: GridPos) -> int:
        return (s[1] * self.width + s[0]) * 4

    def get(self, s: GridPos, a: Action) -> float:
        return self.values[self._base(s) + a]

    def set(self, s: GridPos, a: Action, value: float) -> None:
        if not math.isfinite(value):
            raise FloatingPointError(f"non-finite Q value {value!r} at {s}, {a!r}")
        self.values[self._base(s) + a] = value

    def row(self, s: GridPos) -> list[float]:
        i = self._base(s)
        return self.values[i:i + 4]

    def max_value(self, s: GridPos) -> float:
        i = self._base(s)
        return max(self.values[i:i + 4])

    def copy(self) -> QTable:
        other = QTable(self.width, self.height)
        other.values = list(self.values)
        return other


def td_update(q: QTable, s: GridPos, a: Action, r: float, s_next: GridPos,
              params: LearningParams) -> float:
    """Apply one Q-learning backup to ``Q(s, a)`` and return the new value."""
    values = q.values
    i = (s[1] * q.width + s[0]) * 4 + a
    j = (s_next[1] * q.width + s_next[0]) * 4
    old = values[i]
    target = r + params.gamma * max(values[j], values[j + 1], values[j + 2], values[j + 3])
    new = old + params.alpha * (target - old)
    if not math.isfinite(new):
        raise FloatingPointError(f"TD update produced {new!r} at {s}, {a!r}")
    values[i] = new
    return new


def greedy_action(q: QTable, s: GridPos, rng: Rng) -> Action:
    """Argmax action at ``s``; ties are split uniformly using ``rng``.

    The generator is only consulted when two or more actions tie.
    """
    values = q.values
    i = (s[1] * q.width + s[0]) * 4
    row = values[i:i + 4]
    best = max(row)
    tied = [a for a in range(4) if row[a] == best]
    if len(tied) == 1:
        return ACTIONS[tied[0]]
    return ACTIONS[tied[rng.randrange(len(tied))]]


def epsilon_greedy_explored(q: QTable, s: GridPos, params: LearningParams,
                            rng: Rng) -> tuple[Action, bool]:
    """Like :func:`epsilon_greedy` but also reports whether the action was random."""
    if rng.random() < params.epsilon:
        return ACTIONS[rng.randrange(4)], True
    return greedy_action(q, s, rng), False


def epsilon_greedy(q: QTable, s: GridPos, params: LearningParams, rng: Rng) -> Action:
    return epsilon_greedy_explored(q, s, params, rng)[0]

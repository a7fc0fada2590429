"""Discrete pursuit environment: one predator, one static prey on a bounded grid.

Coordinates follow (x=column, y=row) with the origin in the top-left corner,
so ``Action.UP`` decrements ``y`` and ``Action.DOWN`` increments it. Moves that
would leave the grid clamp, leaving the agent where it was.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple


class GridPos(NamedTuple):
    x: int
    y: int


class Action(IntEnum):
    """The four single-cell moves, in canonical tie-breaking order."""

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3


ACTIONS: tuple[Action, ...] = tuple(Action)

# (dx, dy) per action, indexed by the action's integer value
DELTAS: tuple[tuple[int, int], ...] = ((0, -1), (0, 1), (-1, 0), (1, 0))

DEFAULT_STEP_CAP = 10_000


@dataclass(frozen=True)
class GridWorld:
    """A ``width`` x ``height`` grid with a fixed start cell and goal cell.

    Reaching the goal pays ``goal_reward`` and ends the episode; every other
    transition pays nothing.
    """

    width: int = 15
    height: int = 15
    start: GridPos = GridPos(0, 0)
    goal: GridPos = GridPos(6, 6)
    goal_reward: float = 100.0

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.width}x{self.height}")
        # accept plain tuples
        object.__setattr__(self, "start", GridPos(*self.start))
        object.__setattr__(self, "goal", GridPos(*self.goal))
        for name in ("start", "goal"):
            if not self.in_bounds(getattr(self, name)):
                raise ValueError(f"{name} {getattr(self, name)} is outside the grid")
        if self.start == self.goal:
            raise ValueError("start and goal must differ")
        if not self.goal_reward > 0:
            raise ValueError("goal_reward must be positive")

    @property
    def n_cells(self) -> int:
        return self.width * self.height

    def in_bounds(self, pos: tuple[int, int]) -> bool:
        return 0 <= pos[0] < self.width and 0 <= pos[1] < self.height

    def step(self, pos: GridPos, action: Action) -> tuple[GridPos, float, bool]:
        """Move one cell; returns ``(next_pos, reward, done)``."""
        if not self.in_bounds(pos):
            raise ValueError(f"position {pos} is outside the {self.width}x{self.height} grid")
        dx, dy = DELTAS[action]
        x = min(max(pos[0] + dx, 0), self.width - 1)
        y = min(max(pos[1] + dy, 0), self.height - 1)
        nxt = GridPos(x, y)
        if nxt == self.goal:
            return nxt, self.goal_reward, True
        return nxt, 0.0, False

    def manhattan_to_goal(self, pos: tuple[int, int]) -> int:
        return abs(self.goal[0] - pos[0]) + abs(self.goal[1] - pos[1])

    def optimal_steps(self) -> int:
        """Length of the shortest start-to-goal path (no obstacles, so Manhattan)."""
        return self.manhattan_to_goal(self.start)

"""Turn an emotion into a move: which direction, and how many cells.

Joy picks a random direction, every other emotion follows the greedy action.
Joy and anger move fast (1 or 2 cells), sadness and fear move slowly (0 or 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .appraisal import Emotion
from .gridworld import ACTIONS, Action, GridPos, GridWorld
from .qcore import LearningParams, QTable, Rng, greedy_action, td_update

FAST_EMOTIONS = frozenset({Emotion.JOY, Emotion.ANGER})


@dataclass(frozen=True)
class MoveDecision:
    direction: Action
    speed: int
    random_direction: bool = False


def decide(emotion: Emotion, q: QTable, s: GridPos, rng: Rng) -> MoveDecision:
    # direction is drawn before speed; keep this order, seeds depend on it
    if emotion is Emotion.JOY:
        direction, random_direction = ACTIONS[rng.randrange(4)], True
    else:
        direction, random_direction = greedy_action(q, s, rng), False
    speed = rng.randrange(2) + (1 if emotion in FAST_EMOTIONS else 0)
    return MoveDecision(direction, speed, random_direction)


def execute_move(world: GridWorld, q: QTable, s: GridPos, decision: MoveDecision,
                 params: LearningParams,
                 visited: list[GridPos] | None = None) -> tuple[GridPos, int, bool]:
    """Carry out ``decision`` one cell at a time, learning from each cell.

    Returns ``(final_pos, cells_moved, done)``. A move stops as soon as the
    goal is entered. Cells bumped against a wall still count as moved. Every
    cell arrived at is appended to ``visited`` when it is given.
    """
    pos = s
    for moved in range(1, decision.speed + 1):
        nxt, reward, done = world.step(pos, decision.direction)
        td_update(q, pos, decision.direction, reward, nxt, params)
        pos = nxt
        if visited is not None:
            visited.append(pos)
        if done:
            return pos, moved, True
    return pos, decision.speed, False

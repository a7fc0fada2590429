"""
How the affective agent feels its way to the goal
=================================================

The affective agent ignores epsilon. Before each move it compares three step
counts: ``norm`` (what a power-law fit of past episodes predicts), ``exp1``
(the expectation, which creeps up once the episode overruns) and ``act`` (the
shortest known path from where it stands). The resulting emotion sets both
the direction rule and the speed.
"""

from affectq import (AgentKind, Emotion, GridWorld, LearningParams, classify,
                     fit_power_regression, run_agent)

# %%
# The appraisal rules on a few hand-picked triples (act, exp1, norm).
for triple in [(12, 10, 10), (3, 12, 10), (3, 7, 10), (10, 10, 10)]:
    print(triple, "->", classify(*triple).name)

# %%
# A single affective run and its emotional diary.
world = GridWorld()
run = run_agent(world, AgentKind.AFFECTIVE, LearningParams(), seed=11)
print("episode  steps  norm     joy  sad  anger  fear")
for e in run.episodes[:12] + run.episodes[-3:]:
    print(f"{e.index:7d} {e.steps:6d} {e.norm:7.1f} "
          + " ".join(f"{n:5d}" for n in e.emotion_tally))

# %%
# The norm is a log-log least-squares fit of the episode lengths so far.
fit = fit_power_regression(run.steps[:50])
print(f"after 50 episodes: steps ~ {fit.a:.1f} * t^{fit.b:.3f}")
print("first optimal episode:", run.first_optimal_episode)

joy = sum(e.emotion_tally[Emotion.JOY] for e in run.episodes)
decisions = sum(e.decisions for e in run.episodes)
print(f"share of random (joyful) decisions over the run: {joy / decisions:.3f}")

"""
Sweeping epsilon: standard versus affective
===========================================

A reduced version of the full protocol (5 runs per cell instead of 20) so it
finishes in a few seconds. ``affectq sweep --seed 1`` runs the full one and
writes the figure-ready CSV files.
"""

import numpy as np

from affectq import AgentKind, ExperimentConfig, aggregate, paired_t_test, sweep
from affectq.appraisal import Emotion

cfg = ExperimentConfig(master_seed=1, runs=5)
agg = aggregate(sweep(cfg))
std, aff = AgentKind.STANDARD, AgentKind.AFFECTIVE

# %%
# Mean steps per episode, and mean total steps before the first optimal episode.
print("eps   steps(std) steps(aff)   before-opt(std) before-opt(aff)")
for i, eps in enumerate(agg.epsilons):
    print(f"{eps:.1f} {agg.mean_steps[std][i]:11.1f} {agg.mean_steps[aff][i]:10.1f}"
          f" {agg.mean_total_before_optimal[std][i]:17.0f} {agg.mean_total_before_optimal[aff][i]:15.0f}")

# %%
# Paired t-tests across the nine epsilon values.
for label, series in [("steps/episode", agg.mean_steps),
                      ("total before optimal", agg.mean_total_before_optimal)]:
    res = paired_t_test(series[std], series[aff])
    print(f"{label:22s} t={res.t_stat:6.3f} df={res.df} one-tail p={res.p_one_tail:.4f}")

# %%
# Emotion profile and equivalent epsilon of the affective agent.
for lo, hi in [(1, 10), (11, 50), (51, 100), (101, 200)]:
    shares = "  ".join(f"{e.name.lower()} {agg.emotion_share(e, lo, hi):.2f}" for e in Emotion)
    eq = np.mean(agg.equivalent_epsilon[lo - 1:hi])
    print(f"episodes {lo:3d}-{hi:3d}: {shares}   equivalent eps {eq:.3f}")

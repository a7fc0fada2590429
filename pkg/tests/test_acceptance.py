"""Exit criteria for the build, one test per criterion.

Each test appends a PASS/FAIL line that is printed in the terminal summary.
Criteria 5-10 share one default sweep (master seed 1), which takes tens of
seconds on one core.
"""

import itertools
import time

import numpy as np
import pytest

from affectq.appraisal import Emotion, classify, fit_power_regression
from affectq.artifacts import EPISODE_HEADER, csv_text, episode_rows, write_sweep
from affectq.experiment import AgentKind, ExperimentConfig, aggregate, run_episode, sweep
from affectq.gridworld import GridWorld
from affectq.qcore import LearningParams, QTable, Rng
from affectq.stats import paired_t_test, t_cdf, t_critical
from conftest import ACCEPTANCE_LINES
from oracles import table_ii, value_iteration_q

STD, AFF = AgentKind.STANDARD, AgentKind.AFFECTIVE
DEFAULT = ExperimentConfig(master_seed=1)


def check(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
                            + (f" -- {detail}" if detail else ""))
    assert ok, detail


@pytest.fixture(scope="module")
def default_run(tmp_path_factory):
    t0 = time.perf_counter()
    table = sweep(DEFAULT, workers=1)
    elapsed = time.perf_counter() - t0
    out = tmp_path_factory.mktemp("sweep_single")
    write_sweep(table, out)
    return table, aggregate(table), elapsed, out


def test_criterion_01_emotion_classifier():
    # the four worked examples, as (act, exp1, norm)
    examples = [((3, 5, 10), Emotion.FEAR), ((3, 7, 10), Emotion.ANGER),
                ((12, 10, 10), Emotion.JOY), ((3, 3, 10), Emotion.SADNESS)]
    misses = [(args, want.name, classify(*args).name) for args, want in examples
              if classify(*args) is not want]
    lattice_ok = all(classify(*v) is table_ii(*v) and classify(*v) is classify(*v)
                     for v in itertools.product([1, 2, 3], repeat=3))
    scale_ok = all(classify(*v) is classify(*(2.5 * c for c in v))
                   for v in itertools.product([1, 2, 3], repeat=3))
    detail = (f"lattice total+deterministic={lattice_ok}, scale-invariant={scale_ok}, "
              f"cited examples missed (act,exp1,norm -> want/got)={misses}")
    check(1, "emotion classifier vs rule table", not misses and lattice_ok and scale_ok, detail)


def test_criterion_02_power_regression():
    t = np.arange(1, 11)
    worst = 0.0
    for a, b in itertools.product([1.0, 20.0, 100.0], [-1.0, -0.5, 0.0]):
        fit = fit_power_regression(list(a * t ** b))
        worst = max(worst, abs(fit.a - a), abs(fit.b - b))
    check(2, "power regression recovers a*t^b", worst <= 1e-9, f"max |error| = {worst:.2e}")


def test_criterion_03_student_t():
    one, two = t_critical(8, 0.05, 1), t_critical(8, 0.05, 2)
    grid = [(t, df) for t in np.linspace(-8, 8, 33) for df in (1, 2, 3, 5, 8, 20, 100)]
    sym = max(abs(t_cdf(-t, df) - (1 - t_cdf(t, df))) for t, df in grid)
    trip = max(abs(t_cdf(t_critical(df, a, 1), df) - (1 - a))
               for df in (1, 2, 5, 8, 30) for a in (0.01, 0.05, 0.1, 0.25))
    ok = abs(one - 1.86) <= 0.005 and abs(two - 2.31) <= 0.005 and sym <= 1e-5 and trip <= 1e-5
    check(3, "Student-t critical values and properties", ok,
          f"t_crit(8) one-tail={one:.4f}, two-tail={two:.4f}, symmetry err={sym:.1e}, "
          f"round-trip err={trip:.1e}")


def test_criterion_04_oracle_seeded_rollout():
    world = GridWorld()
    params = LearningParams(0.1, 0.9, 0.0)
    q = QTable(15, 15)
    for (x, y), row in value_iteration_q(15, 15, world.goal, world.goal_reward, 0.9).items():
        q.values[(y * 15 + x) * 4:(y * 15 + x) * 4 + 4] = row
    rng = Rng(1)
    steps = [run_episode(world, STD, q, None, params, rng, i).steps for i in range(1, 201)]
    check(4, "value-iteration-seeded greedy rollout is optimal",
          set(steps) == {world.optimal_steps()}, f"distinct episode lengths {sorted(set(steps))}")


@pytest.mark.slow
def test_criterion_05_affective_ignores_epsilon(default_run):
    _, _, elapsed, _ = default_run
    table = sweep(DEFAULT, agents=[AFF], shared_epsilon_seeds=True)
    n_eps = len(DEFAULT.epsilons)
    identical = all(
        csv_text(EPISODE_HEADER, episode_rows(table.cells[(AFF, ei, r)]))
        == csv_text(EPISODE_HEADER, episode_rows(table.cells[(AFF, 0, r)]))
        for r in range(DEFAULT.runs) for ei in range(1, n_eps))
    check(5, "affective results identical across epsilon under shared seeds",
          identical and elapsed <= 60.0,
          f"identical={identical}, full sweep took {elapsed:.1f}s (limit 60s)")


@pytest.mark.slow
def test_criterion_06_crossover(default_run):
    _, agg, _, _ = default_run
    diff = [s - a for s, a in zip(agg.mean_steps[STD], agg.mean_steps[AFF])]
    series = ", ".join(f"{e}:{d:+.1f}" for e, d in zip(agg.epsilons, diff))
    check(6, "standard better at eps=0.1, affective better at eps=0.9",
          diff[0] < 0 and diff[-1] > 0, f"standard-minus-affective steps/episode {series}")


@pytest.mark.slow
def test_criterion_07_total_steps_before_optimal(default_run):
    _, agg, _, _ = default_run
    std, aff = agg.mean_total_before_optimal[STD], agg.mean_total_before_optimal[AFF]
    wins = sum(a < s for s, a in zip(std, aff))
    res = paired_t_test(std, aff)
    check(7, "affective needs fewer steps before the optimal path",
          wins >= 7 and res.t_stat > 0 and res.p_one_tail < 0.10,
          f"affective lower in {wins}/9 cells, t={res.t_stat:.3f}, "
          f"one-tail p={res.p_one_tail:.4f}")


@pytest.mark.slow
def test_criterion_08_emotion_profile(default_run):
    _, agg, _, _ = default_run
    early = {e.name: round(agg.emotion_share(e, 1, 10), 3) for e in Emotion}
    late = {e.name: round(agg.emotion_share(e, 150, 200), 3) for e in Emotion}
    fear = agg.emotion_share(Emotion.FEAR)
    ok = max(early, key=early.get) == "JOY" and max(late, key=late.get) == "ANGER"
    check(8, "joy modal early, anger modal late", ok,
          f"episodes 1-10 {early}; episodes 150-200 {late}; overall fear share {fear:.3f}")


@pytest.mark.slow
def test_criterion_09_equivalent_epsilon(default_run):
    _, agg, _, _ = default_run
    eq = np.asarray(agg.equivalent_epsilon)
    slope = np.polyfit(np.arange(1, len(eq) + 1), eq, 1)[0]
    start, first20, tail = eq[:10].mean(), eq[:20].mean(), eq[100:200].mean()
    first_opt = agg.mean_first_optimal_episode[AFF]
    ok = (slope < 0 and 0.15 <= start <= 0.45 and first20 - tail >= 0.05
          and first_opt is not None and 10 <= first_opt <= 60)
    check(9, "equivalent epsilon decays", ok,
          f"slope={slope:.2e}, mean eps 1-10={start:.3f}, 1-20={first20:.3f}, "
          f"101-200={tail:.3f}, affective mean first-optimal episode={first_opt:.2f}")


@pytest.mark.slow
def test_criterion_10_golden_determinism(default_run, tmp_path):
    _, _, _, single_dir = default_run
    write_sweep(sweep(DEFAULT, workers=2), tmp_path)
    names = sorted(p.name for p in single_dir.iterdir())
    same = [n for n in names if (single_dir / n).read_bytes() == (tmp_path / n).read_bytes()]
    check(10, "byte-identical artifacts across invocations and worker counts",
          len(names) == 6 and same == names, f"{len(same)}/{len(names)} files identical")

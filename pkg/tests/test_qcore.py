import math
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from affectq.gridworld import ACTIONS, Action, GridPos
from affectq.qcore import (LearningParams, QTable, Rng, derive_seed, epsilon_greedy,
                           epsilon_greedy_explored, greedy_action, td_update)

S = GridPos(3, 4)
S2 = GridPos(4, 4)


def test_splitmix64_reference_stream():
    # published first outputs of SplitMix64 seeded with 0
    rng = Rng(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4


def test_rng_ranges_and_determinism():
    a, b = Rng(123), Rng(123)
    draws = [a.random() for _ in range(1000)]
    assert draws == [b.random() for _ in range(1000)]
    assert all(0.0 <= u < 1.0 for u in draws)
    r = Rng(9)
    assert set(r.randrange(4) for _ in range(1000)) == {0, 1, 2, 3}


def test_derive_seed_separates_streams():
    seeds = {derive_seed(1, k, e, r) for k in range(2) for e in range(9) for r in range(20)}
    assert len(seeds) == 360
    assert derive_seed(1, 0, 2, 3) == derive_seed(1, 0, 2, 3)


@pytest.mark.parametrize("kwargs", [dict(alpha=0.0), dict(alpha=1.5), dict(gamma=1.0),
                                    dict(epsilon=-0.1), dict(epsilon=1.01)])
def test_learning_params_ranges(kwargs):
    with pytest.raises(ValueError):
        LearningParams(**kwargs)


def test_td_update_zero_table():
    q = QTable(15, 15)
    assert td_update(q, S, Action.UP, 100.0, S2, LearningParams(0.5, 0.9)) == 50.0
    assert q.get(S, Action.UP) == 50.0
    assert sum(1 for v in q.values if v != 0) == 1


def test_td_update_hand_computed():
    q = QTable(15, 15)
    q.set(S, Action.RIGHT, 10.0)
    q.set(S2, Action.DOWN, 20.0)
    q.set(S2, Action.UP, 5.0)
    new = td_update(q, S, Action.RIGHT, 0.0, S2, LearningParams(0.1, 0.9))
    assert new == pytest.approx(10.8, abs=1e-12)


def test_td_update_alpha_zero_is_identity():
    # alpha=0 is outside LearningParams' range; td_update only reads the fields
    q = QTable(15, 15)
    q.set(S, Action.LEFT, 3.0)
    q.set(S2, Action.UP, 7.0)
    params = SimpleNamespace(alpha=0.0, gamma=0.9)
    assert td_update(q, S, Action.LEFT, 99.0, S2, params) == 3.0


def test_td_update_rejects_non_finite():
    q = QTable(15, 15)
    with pytest.raises(FloatingPointError):
        td_update(q, S, Action.UP, math.inf, S2, LearningParams())


def test_td_update_converges_to_terminal_reward():
    q = QTable(15, 15)
    params = LearningParams(0.5, 0.9)
    for _ in range(60):
        td_update(q, S, Action.DOWN, 42.0, S2, params)  # S2 row stays all zero
    assert abs(q.get(S, Action.DOWN) - 42.0) < 1e-6


@settings(max_examples=200)
@given(st.lists(st.floats(-50, 50), min_size=8, max_size=8), st.floats(-100, 100),
       st.floats(0.01, 1.0), st.floats(0.0, 0.99))
def test_td_update_stays_bounded(vals, r, alpha, gamma):
    q = QTable(15, 15)
    for a in ACTIONS:
        q.set(S, a, vals[a])
        q.set(S2, a, vals[4 + a])
    m = max(abs(v) for v in vals)
    new = td_update(q, S, Action.UP, r, S2, LearningParams(alpha, gamma))
    assert abs(new) <= max(m, abs(r) + gamma * m) + 1e-9


def _freq(fn, n=10_000, seed=11):
    rng = Rng(seed)
    counts = [0, 0, 0, 0]
    for _ in range(n):
        counts[fn(rng)] += 1
    return [c / n for c in counts]


def test_greedy_unique_max():
    q = QTable(15, 15)
    q.set(S, Action.UP, 1.0)
    assert _freq(lambda rng: greedy_action(q, S, rng), 1000) == [1.0, 0, 0, 0]


def test_greedy_full_tie_is_uniform():
    q = QTable(15, 15)
    n = 10_000
    freqs = _freq(lambda rng: greedy_action(q, S, rng), n)
    chi2 = sum((f * n - n / 4) ** 2 / (n / 4) for f in freqs)
    assert chi2 < 16.27  # chi-square(3) upper 0.1% point


def test_greedy_partial_tie():
    q = QTable(15, 15)
    q.set(S, Action.UP, 5.0)
    q.set(S, Action.LEFT, 5.0)
    freqs = _freq(lambda rng: greedy_action(q, S, rng))
    assert freqs[Action.DOWN] == freqs[Action.RIGHT] == 0
    assert freqs[Action.UP] == pytest.approx(0.5, abs=0.02)


@pytest.mark.parametrize("eps, expected", [
    (0.0, [1.0, 0.0, 0.0, 0.0]),
    (1.0, [0.25] * 4),
    (0.4, [0.7, 0.1, 0.1, 0.1]),
])
def test_epsilon_greedy_mixture(eps, expected):
    # closed form: greedy mass (1 - eps) + eps / 4 on the argmax, eps / 4 elsewhere
    q = QTable(15, 15)
    q.set(S, Action.UP, 1.0)
    params = LearningParams(epsilon=eps)
    freqs = _freq(lambda rng: epsilon_greedy(q, S, params, rng), 100_000)
    for f, e in zip(freqs, expected):
        assert abs(f - e) <= 0.01


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from([0.0, 1.0, 2.0]), min_size=4, max_size=4),
       st.sampled_from([0.1, 0.5, 0.9]))
def test_epsilon_greedy_mixture_any_table(row, eps):
    q = QTable(15, 15)
    for a in ACTIONS:
        q.set(S, a, row[a])
    best = max(row)
    tied = [a for a in ACTIONS if row[a] == best]
    expected = [eps / 4 + ((1 - eps) / len(tied) if a in tied else 0.0) for a in ACTIONS]
    params = LearningParams(epsilon=eps)
    freqs = _freq(lambda rng: epsilon_greedy(q, S, params, rng), 100_000, seed=3)
    assert max(abs(f - e) for f, e in zip(freqs, expected)) <= 0.01


def test_explored_flag_counts_random_draws():
    q = QTable(15, 15)
    rng = Rng(4)
    flags = [epsilon_greedy_explored(q, S, LearningParams(epsilon=1.0), rng)[1] for _ in range(50)]
    assert all(flags)
    flags = [epsilon_greedy_explored(q, S, LearningParams(epsilon=0.0), rng)[1] for _ in range(50)]
    assert not any(flags)


def test_action_sequence_deterministic():
    q = QTable(15, 15)
    q.set(S, Action.RIGHT, 0.5)
    params = LearningParams(epsilon=0.3)
    runs = []
    for _ in range(2):
        rng = Rng(77)
        runs.append([epsilon_greedy(q, S, params, rng) for _ in range(500)])
    assert runs[0] == runs[1]

"""Summary statistics and the paired t-test, spreadsheet style.

The Student-t distribution is evaluated through the regularized incomplete
beta function, computed with a modified-Lentz continued fraction.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence


class DegenerateTestError(ValueError):
    pass


def mean(xs: Sequence[float]) -> float:
    if len(xs) < 1:
        raise ValueError("mean of an empty sequence")
    return math.fsum(xs) / len(xs)


def variance(xs: Sequence[float]) -> float:
    """Sample variance (n - 1 denominator)."""
    if len(xs) < 2:
        raise ValueError("variance needs at least two values")
    m = mean(xs)
    return math.fsum((x - m) ** 2 for x in xs) / (len(xs) - 1)


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError("pearson: sequences differ in length")
    if len(xs) < 2:
        raise ValueError("pearson needs at least two pairs")
    mx, my = mean(xs), mean(ys)
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        raise ValueError("pearson correlation is undefined for a constant sequence")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


_TINY = 1e-300


def _beta_cf(a: float, b: float, x: float, eps: float = 1e-15, max_iter: int = 10_000) -> float:
    c = 1.0
    d = 1.0 - (a + b) * x / (a + 1.0)
    d = 1.0 / (d if abs(d) > _TINY else _TINY)
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        # even step
        num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2))
        d = 1.0 + num * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + num / c
        c = c if abs(c) > _TINY else _TINY
        h *= d * c
        # odd step
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0))
        d = 1.0 + num * d
        d = 1.0 / (d if abs(d) > _TINY else _TINY)
        c = 1.0 + num / c
        c = c if abs(c) > _TINY else _TINY
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise ValueError("betainc needs a > 0 and b > 0")
    if not 0.0 <= x <= 1.0:
        raise ValueError("betainc needs 0 <= x <= 1")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    # the continued fraction converges fast only on this side of the mode
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _beta_cf(b, a, 1.0 - x) / b


def t_cdf(t: float, df: float) -> float:
    """P(T <= t) for Student's t with ``df`` degrees of freedom."""
    if df < 1:
        raise ValueError("df must be >= 1")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    tail = _upper_tail(abs(t), df)
    return 1.0 - tail if t >= 0 else tail


def _upper_tail(t: float, df: float) -> float:
    # P(T >= t) for t >= 0, without cancellation in 1 - cdf
    t2 = t * t
    if t2 < df:
        # near zero df/(df+t^2) rounds to 1; use the complementary argument
        return 0.5 - 0.5 * betainc(0.5, df / 2.0, t2 / (df + t2))
    return 0.5 * betainc(df / 2.0, 0.5, df / (df + t2))


def t_critical(df: float, alpha: float = 0.05, tails: int = 2, tol: float = 1e-10) -> float:
    """Upper critical value: the (1 - alpha) quantile for one tail, (1 - alpha/2) for two."""
    if tails not in (1, 2):
        raise ValueError("tails must be 1 or 2")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    target = 1.0 - alpha / tails
    if target <= 0.5:
        lo, hi = -1.0, 0.0
        while t_cdf(lo, df) > target:
            lo *= 2.0
    else:
        lo, hi = 0.0, 1.0
        while t_cdf(hi, df) < target:
            hi *= 2.0
    while hi - lo > tol * max(1.0, abs(hi)):
        mid = 0.5 * (lo + hi)
        if t_cdf(mid, df) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TTestResult:
    mean_a: float
    mean_b: float
    var_a: float
    var_b: float
    pearson: float | None
    n: int
    hypothesized_mean_difference: float
    df: int
    t_stat: float
    p_one_tail: float
    p_two_tail: float
    t_crit_one_tail: float
    t_crit_two_tail: float

    def to_dict(self) -> dict:
        return asdict(self)


def paired_t_test(xs: Sequence[float], ys: Sequence[float], alpha: float = 0.05) -> TTestResult:
    """Paired two-sample t-test for a zero mean difference.

    The one-tail p-value is P(T >= |t|), the two-tail value twice that.
    ``pearson`` is ``None`` when either column is constant.
    """
    if len(xs) != len(ys):
        raise ValueError(f"paired samples differ in length ({len(xs)} vs {len(ys)})")
    n = len(xs)
    if n < 2:
        raise ValueError("paired t-test needs at least two pairs")
    d = [x - y for x, y in zip(xs, ys)]
    sd = math.sqrt(variance(d))
    if sd == 0:
        raise DegenerateTestError("differences have zero spread; t statistic is undefined")
    t = mean(d) / (sd / math.sqrt(n))
    df = n - 1
    p_one = _upper_tail(abs(t), df)
    try:
        r = pearson(xs, ys)
    except ValueError:
        r = None
    return TTestResult(
        mean_a=mean(xs), mean_b=mean(ys), var_a=variance(xs), var_b=variance(ys),
        pearson=r, n=n, hypothesized_mean_difference=0.0, df=df, t_stat=t,
        p_one_tail=p_one, p_two_tail=min(1.0, 2.0 * p_one),
        t_crit_one_tail=t_critical(df, alpha, 1), t_crit_two_tail=t_critical(df, alpha, 2),
    )

"""
Spreadsheet-style paired t-test tables
======================================

The statistics kernel reproduces every row of a two-sample paired t-test
table: means, variances, Pearson correlation, t statistic, one- and two-tail
p-values and the 5% critical values. The t distribution is evaluated
through a continued-fraction incomplete beta function, no scipy required.
"""

from affectq.stats import paired_t_test, t_cdf, t_critical

# %%
# Critical values for 8 degrees of freedom, as in a nine-pair comparison.
print(f"t crit one-tail (df=8): {t_critical(8, 0.05, 1):.4f}")
print(f"t crit two-tail (df=8): {t_critical(8, 0.05, 2):.4f}")
print(f"P(T <= 2.77 | df=8) = {t_cdf(2.77, 8):.4f}")

# %%
# A table for two made-up series of nine measurements.
a = [52.1, 55.3, 60.2, 58.9, 66.0, 71.4, 80.2, 95.5, 140.7]
b = [56.0, 55.1, 57.3, 56.8, 55.9, 56.4, 57.0, 55.2, 56.8]
res = paired_t_test(a, b)
for name, value in res.to_dict().items():
    print(f"{name:30s} {value}")

#!/usr/bin/env python3
"""Regenerate tests/refvalues.py.

Reference CDF values for Student t, Fisher F and chi-squared come from
mpmath's regularized incomplete beta/gamma evaluated at 50 decimal digits.
The grid x values are the classic two-decimal critical points from printed
tables (so most CDFs land visibly at 0.950/0.975/0.990). Studentized-range
critical values come from scipy.stats.studentized_range, which reproduces the
standard published tables of the distribution.
"""

import mpmath as mp
from scipy.stats import studentized_range

mp.mp.dps = 50

T_POINTS = [
    (1, 1.0),
    (2, -1.5),
    (5, 2.535),
    (10, 1.812),
    (30, 2.042),
    (60, 0.679),
    (120, -2.617),
]
CHI2_POINTS = [
    (1, 3.841),
    (3, 7.815),
    (5, 1.145),
    (10, 18.307),
    (20, 31.410),
    (40, 55.758),
]
F_POINTS = [
    ((1, 10), 4.965),
    ((2, 10), 4.103),
    ((5, 10), 3.326),
    ((6, 28), 2.445),
    ((10, 120), 1.910),
    ((3, 5), 0.907),
    ((8, 15), 2.641),
]
SRANGE_GRID = [(k, df, alpha) for k in (3, 5, 7) for df in (10, 30, 60) for alpha in (0.05, 0.01)]


def t_cdf(x, df):
    df = mp.mpf(df)
    x = mp.mpf(x)
    p = mp.betainc(df / 2, mp.mpf(1) / 2, 0, df / (df + x * x), regularized=True) / 2
    return 1 - p if x > 0 else p


def chi2_cdf(x, df):
    return mp.gammainc(mp.mpf(df) / 2, 0, mp.mpf(x) / 2, regularized=True)


def f_cdf(x, d1, d2):
    d1, d2, x = mp.mpf(d1), mp.mpf(d2), mp.mpf(x)
    return mp.betainc(d1 / 2, d2 / 2, 0, d1 * x / (d1 * x + d2), regularized=True)


def main():
    lines = [
        '"""Frozen reference values for distribution accuracy tests.',
        "",
        "Generated by tools/make_reference_values.py: t/F/chi-squared CDFs from",
        "mpmath at 50-digit precision on classic table critical points;",
        "studentized-range critical values from scipy.stats.studentized_range",
        '(matches the standard published tables to their printed precision)."""',
        "",
        "# (df, x, cdf)",
        "STUDENT_T_CDF = [",
    ]
    for df, x in T_POINTS:
        lines.append(f"    ({df}, {x!r}, {mp.nstr(t_cdf(x, df), 12)}),")
    lines.append("]")
    lines.append("")
    lines.append("# (df, x, cdf)")
    lines.append("CHI_SQUARED_CDF = [")
    for df, x in CHI2_POINTS:
        lines.append(f"    ({df}, {x!r}, {mp.nstr(chi2_cdf(x, df), 12)}),")
    lines.append("]")
    lines.append("")
    lines.append("# ((df1, df2), x, cdf)")
    lines.append("FISHER_F_CDF = [")
    for (d1, d2), x in F_POINTS:
        lines.append(f"    (({d1}, {d2}), {x!r}, {mp.nstr(f_cdf(x, d1, d2), 12)}),")
    lines.append("]")
    lines.append("")
    lines.append("# (k, df, alpha, upper critical value q with P(Q > q) = alpha)")
    lines.append("STUDENTIZED_RANGE_CRIT = [")
    for k, df, alpha in SRANGE_GRID:
        q = studentized_range.ppf(1 - alpha, k, df)
        lines.append(f"    ({k}, {df}, {alpha!r}, {q:.6f}),")
    lines.append("]")
    print("\n".join(lines))


if __name__ == "__main__":
    main()

"""Published reference values used as regression fixtures.

The cable-insulation failure voltages are the classic two-group lifetime
dataset from Lawless (2011, Example 5.4.3). The critical-value and power
tables are published 100,000-replicate Monte-Carlo references for the
maximal precedence/exceedance sum test and its competitors; their entries
carry simulation noise of a few thousandths, which is why the acceptance
gates compare against them with explicit miss budgets instead of exact
equality.
"""

# Failure voltages (kV/mm) for two types of electrical cable insulation.
INSULATION_TYPE1 = (
    32.0, 35.4, 36.2, 39.8, 41.2, 43.3, 45.5, 46.0, 46.2, 46.4,
    46.5, 46.8, 47.3, 47.3, 47.6, 49.2, 50.4, 50.9, 52.4, 56.3,
)
INSULATION_TYPE2 = (
    39.4, 45.3, 49.2, 49.4, 51.3, 52.0, 53.2, 53.2, 54.9, 55.5,
    57.1, 57.2, 57.5, 59.2, 61.0, 62.4, 63.8, 64.3, 67.3, 67.7,
)

# Maximal precedence / exceedance counts on the insulation data
# (training = type 1, test = type 2), keyed by cell count.
INSULATION_MAX_PRECEDENCE = {1: 3, 2: 3, 3: 10}
INSULATION_MAX_EXCEEDANCE = {1: 0, 2: 0, 3: 0}

# Observed statistics and critical values on the insulation data, keyed by
# r (= s). "direct" takes type 1 as training group; "swapped" reverses roles.
INSULATION_DIRECT_T = {1: 3, 2: 3, 3: 10, 4: 10}
INSULATION_DIRECT_T_CRIT = {1: 6, 2: 8, 3: 9, 4: 9}
INSULATION_DIRECT_V = {1: 13, 2: 20, 3: 32, 4: 32}
INSULATION_SWAPPED_T = {1: 10, 2: 10, 3: 10, 4: 11}
INSULATION_SWAPPED_T_CRIT = {1: 6, 2: 8, 3: 9, 4: 9}
INSULATION_SWAPPED_V = {1: 0, 2: 0, 3: 0, 4: 1}
INSULATION_V_CRIT = {1: 7, 2: 10, 3: 13, 4: 16}

# Critical values c with attained tail masses (alpha1, alpha2) at the 5%
# level for r = s derived from the rate rho: rows (rho, m, n, r, c, a1, a2).
CRITICAL_RATE_GRID = [
    (0.05, 10, 10, 1, 6, 0.03, 0.07),
    (0.05, 10, 20, 2, 5, 0.03, 0.09),
    (0.05, 10, 30, 2, 4, 0.03, 0.11),
    (0.05, 20, 10, 1, 10, 0.04, 0.06),
    (0.05, 20, 20, 2, 8, 0.03, 0.06),
    (0.05, 20, 30, 2, 6, 0.04, 0.08),
    (0.05, 30, 10, 1, 14, 0.04, 0.06),
    (0.05, 30, 20, 2, 11, 0.03, 0.06),
    (0.05, 30, 30, 2, 8, 0.04, 0.07),
    (0.10, 10, 10, 2, 7, 0.03, 0.09),
    (0.10, 10, 20, 3, 6, 0.01, 0.05),
    (0.10, 10, 30, 4, 5, 0.02, 0.09),
    (0.10, 20, 10, 2, 12, 0.04, 0.07),
    (0.10, 20, 20, 3, 9, 0.02, 0.06),
    (0.10, 20, 30, 4, 7, 0.04, 0.10),
    (0.10, 30, 10, 2, 17, 0.04, 0.06),
    (0.10, 30, 20, 3, 12, 0.03, 0.05),
    (0.10, 30, 30, 4, 10, 0.03, 0.06),
    (0.25, 10, 10, 3, 8, 0.02, 0.06),
    (0.25, 10, 20, 6, 6, 0.05, 0.17),
    (0.25, 10, 30, 8, 6, 0.02, 0.07),
    (0.25, 20, 10, 3, 13, 0.04, 0.07),
    (0.25, 20, 20, 6, 10, 0.04, 0.08),
    (0.25, 20, 30, 8, 9, 0.02, 0.05),
    (0.25, 30, 10, 3, 18, 0.04, 0.07),
    (0.25, 30, 20, 6, 14, 0.03, 0.06),
    (0.25, 30, 30, 8, 11, 0.04, 0.09),
    (0.35, 10, 10, 4, 8, 0.03, 0.10),
    (0.35, 10, 20, 8, 7, 0.02, 0.07),
    (0.35, 10, 30, 11, 6, 0.02, 0.11),
    (0.35, 20, 10, 4, 14, 0.03, 0.06),
    (0.35, 20, 20, 8, 11, 0.02, 0.06),
    (0.35, 20, 30, 11, 9, 0.03, 0.09),
    (0.35, 30, 10, 4, 19, 0.05, 0.08),
    (0.35, 30, 20, 8, 15, 0.02, 0.05),
    (0.35, 30, 30, 11, 12, 0.03, 0.07),
]

# 4x4 grid at m = n = 10: CRITICAL_GRID_10[r][s] = (c, alpha1, alpha2).
CRITICAL_GRID_10 = {
    1: {1: (6, 0.03, 0.07), 2: (7, 0.02, 0.05), 3: (7, 0.02, 0.07), 4: (7, 0.03, 0.09)},
    2: {1: (7, 0.02, 0.05), 2: (7, 0.03, 0.09), 3: (7, 0.04, 0.12), 4: (8, 0.02, 0.06)},
    3: {1: (7, 0.03, 0.07), 2: (7, 0.04, 0.12), 3: (8, 0.02, 0.06), 4: (8, 0.02, 0.08)},
    4: {1: (7, 0.03, 0.09), 2: (8, 0.02, 0.06), 3: (8, 0.02, 0.08), 4: (8, 0.03, 0.10)},
}

# 8x8 grid at m = n = 20.
CRITICAL_GRID_20 = {
    1: {1: (6, 0.04, 0.09), 2: (7, 0.04, 0.08), 3: (8, 0.02, 0.05), 4: (8, 0.03, 0.07),
        5: (8, 0.04, 0.08), 6: (8, 0.04, 0.09), 7: (8, 0.05, 0.10), 8: (9, 0.02, 0.06)},
    2: {1: (7, 0.04, 0.08), 2: (8, 0.03, 0.06), 3: (8, 0.04, 0.09), 4: (9, 0.02, 0.05),
        5: (9, 0.03, 0.06), 6: (9, 0.03, 0.07), 7: (9, 0.04, 0.09), 8: (9, 0.04, 0.09)},
    3: {1: (8, 0.02, 0.05), 2: (8, 0.04, 0.09), 3: (9, 0.03, 0.06), 4: (9, 0.03, 0.07),
        5: (9, 0.04, 0.09), 6: (9, 0.05, 0.10), 7: (10, 0.02, 0.05), 8: (10, 0.03, 0.06)},
    4: {1: (8, 0.03, 0.07), 2: (9, 0.02, 0.05), 3: (9, 0.03, 0.07), 4: (9, 0.04, 0.09),
        5: (10, 0.02, 0.05), 6: (10, 0.03, 0.06), 7: (10, 0.03, 0.07), 8: (10, 0.03, 0.08)},
    5: {1: (8, 0.04, 0.08), 2: (9, 0.03, 0.06), 3: (9, 0.04, 0.09), 4: (10, 0.02, 0.05),
        5: (10, 0.03, 0.06), 6: (10, 0.03, 0.07), 7: (10, 0.04, 0.08), 8: (10, 0.04, 0.09)},
    6: {1: (8, 0.04, 0.09), 2: (9, 0.03, 0.07), 3: (9, 0.05, 0.10), 4: (10, 0.03, 0.06),
        5: (10, 0.03, 0.07), 6: (10, 0.04, 0.08), 7: (10, 0.04, 0.09), 8: (10, 0.05, 0.11)},
    7: {1: (8, 0.05, 0.10), 2: (9, 0.04, 0.09), 3: (10, 0.02, 0.05), 4: (10, 0.03, 0.07),
        5: (10, 0.04, 0.08), 6: (10, 0.04, 0.09), 7: (10, 0.05, 0.11), 8: (11, 0.02, 0.05)},
    8: {1: (9, 0.02, 0.06), 2: (9, 0.04, 0.09), 3: (10, 0.03, 0.06), 4: (10, 0.03, 0.08),
        5: (10, 0.04, 0.09), 6: (10, 0.05, 0.11), 7: (11, 0.02, 0.05), 8: (11, 0.02, 0.06)},
}

# Power of the max-sum test at the 5% level under G = F^gamma, 100k-replicate
# reference values: POWER_T[m][r][gamma] for m = n and r = s.
POWER_T = {
    10: {
        1: {0.5: 0.070, 2.0: 0.189, 3.0: 0.385, 5.0: 0.678, 10.0: 0.929},
        2: {0.5: 0.066, 2.0: 0.138, 3.0: 0.269, 5.0: 0.520, 10.0: 0.834},
    },
    20: {
        1: {0.5: 0.073, 2.0: 0.324, 3.0: 0.659, 5.0: 0.932, 10.0: 0.998},
        2: {0.5: 0.068, 2.0: 0.266, 3.0: 0.566, 5.0: 0.888, 10.0: 0.996},
    },
}

# Unequal group sizes (m = 30): POWER_T_UNEQUAL[(n, gamma)][r].
POWER_T_UNEQUAL = {
    (10, 5.0): {1: 0.845, 2: 0.714, 3: 0.632, 4: 0.574},
    (25, 5.0): {1: 0.959, 2: 0.937, 3: 0.894, 4: 0.865},
    (10, 0.2): {1: 0.331, 2: 0.344, 3: 0.303, 4: 0.270},
    (25, 0.2): {1: 0.307, 2: 0.365, 3: 0.377, 4: 0.358},
}

# m = n = 25 comparison grid, r = s = 1..4, 5% level: reference power of the
# max-sum test (T), the count-sum test (V), and the maximal-precedence test
# (Q), plus the published critical values used for cross-checking.
POWER_COMPARE_25_T = {
    2.0: (0.379, 0.325, 0.274, 0.246),
    3.0: (0.734, 0.666, 0.599, 0.552),
    5.0: (0.965, 0.947, 0.918, 0.895),
}
POWER_COMPARE_25_V = {
    2.0: (0.506, 0.564, 0.592, 0.603),
    3.0: (0.838, 0.884, 0.899, 0.904),
    5.0: (0.985, 0.993, 0.994, 0.994),
}
POWER_COMPARE_25_Q = {
    2.0: (0.542, 0.549, 0.506, 0.486),
    3.0: (0.862, 0.879, 0.846, 0.835),
    5.0: (0.989, 0.993, 0.989, 0.989),
}
COMPARE_25_T_CRIT = (6, 8, 9, 10)
COMPARE_25_V_CRIT = (7, 10, 13, 16)
COMPARE_25_Q_CRIT = (5, 5, 6, 6)

"""Reference constants used for side-by-side comparison.

Nothing in the computation depends on these values. They feed the
``table*`` commands' comparison columns and the regression tests.
"""

from __future__ import annotations

from .symalg import INF

__all__ = [
    "TABLE1",
    "TABLE2",
    "TABLE3",
    "TABLE_ROWS",
    "TABLE_COLUMNS",
    "INFINITE_ROW_COLUMNS",
    "RILEY_23_29",
    "REFERENCE_P_10_17",
    "REFERENCE_P_23_29",
    "MU0_10_17",
    "CERTIFICATE_CONSTANTS",
]

# (2, p): fraction, upper bound for delta_inf(2, p), delta_1(2, p)
TABLE1: dict[int, tuple[str, float, float]] = {
    3: ("29/41", 0.3583, 0.19474),
    4: ("29/41", 0.5952, 0.4154),
    5: ("29/41", 0.7831, 0.4561),
    6: ("26/33", 0.9399, 0.6574),
    7: ("26/33", 1.07948, 0.5452),
    8: ("23/29", 1.2013, 0.7642),
    9: ("23/29", 1.3105, 0.9275),
    10: ("23/29", 1.3979, 1.0612),
    20: ("23/29", 2.0804, 1.8297),
    100: ("23/29", 3.6821, 3.4596),
}

TABLE_ROWS = (3, 4, 5, 6, 7, 8, 9, 10)
TABLE_COLUMNS = (3, 4, 5, 6, 7, 8, 9, 10, 20, 100)
INFINITE_ROW_COLUMNS = (3, 4, 5, 6, 7, 20, 100)

_C = {
    3: (4.984, 5.222, 5.275, 5.279, 5.276, 5.273, 5.268, 5.262, 5.213, 5.190),
    4: (None, 5.453, 5.512, 5.517, 5.507, 5.496, 5.487, 5.480, 5.453, 5.443),
    5: (None, None, 5.484, 5.467, 5.451, 5.440, 5.428, 5.433, 5.392, 5.376),
    6: (None, None, None, 5.369, 5.372, 5.346, 5.327, 5.314, 5.271, 5.258),
    7: (None, None, None, None, 5.319, 5.282, 5.257, 5.238, 5.177, 5.157),
    8: (None, None, None, None, None, 5.239, 5.209, 5.060, 5.113, 5.089),
    9: (None, None, None, None, None, None, 5.173, 5.150, 5.068, 5.041),
    10: (None, None, None, None, None, None, None, 4.890, 5.0352, 5.006),
    INF: (5.16, 5.432, 5.356, 5.238, 5.136, None, None, None, 4.862, None),
}

_F = {
    3: ("29/41", "21/34", "19/30", "19/30", "19/30", "19/30", "19/30", "19/30", "16/23", "16/23"),
    4: (None, "29/41", "18/31", "19/31", "19/31", "19/30", "19/31", "19/30", "21/34", "21/34"),
    5: (None, None, "29/41", "18/31", "18/31", "18/31", "18/31", "18/31", "17/29", "19/31"),
    6: (None, None, None, "26/33", "18/31", "18/31", "18/31", "18/31", "18/31", "18/31"),
    7: (None, None, None, None, "26/33", "18/31", "18/31", "18/31", "18/31", "18/31"),
    8: (None, None, None, None, None, "23/29", "18/31", "18/31", "18/31", "18/31"),
    9: (None, None, None, None, None, None, "23/29", "17/29", "18/31", "18/31"),
    10: (None, None, None, None, None, None, None, "23/29", "18/31", "18/31"),
    INF: ("34/49", "55/89", "46/75", "44/75", "41/70", None, None, None, "41/70", "23/29"),
}


def _cells(grid):
    return {
        (p, q): v
        for p, row in grid.items()
        for q, v in zip(TABLE_COLUMNS, row)
        if v is not None
    }


# c(p, q) with cosh(2 delta_inf) <= c / (4 sin^2(pi/p) sin^2(pi/q))
TABLE2: dict[tuple, float] = _cells(_C)
# Farey fraction attaining c(p, q)
TABLE3: dict[tuple, str] = _cells(_F)

# (INF, 2) extremal root: fraction, root, modulus, 2|z|^2
RILEY_23_29 = ("23/29", complex(1.03791, 0.692732), 1.24785, 3.11425)

# Reference descending coefficients of the degree-17 parabolic polynomial.
# This list cannot arise from the sign recipe (see the test suite).
REFERENCE_P_10_17 = (1, -5, 18, -45, 91, -151, 210, -252, 255, -225, 166, -102, 52, -16, 4, 2, 0, 4)

# Descending coefficients of the degree-29 (INF, 2) polynomial.
REFERENCE_P_23_29 = (
    -1, 0, 5, 0, -17, 0, 40, 0, -74, 0, 111, 0, -137, 0, 144, 0,
    -126, 0, 94, 0, -58, 0, 28, 0, -12, 0, 3, 0, -1, 2,
)

MU0_10_17 = complex(0.593302, -1.42172)

CERTIFICATE_CONSTANTS = {
    "mu0_modulus": 1.54055,
    "next_moduli": (1.4879, 1.3501),
    "inner_radius": 0.0005,
    "outer_radius": 0.025,
    "inner_lower": 0.0685,
    "inner_observed": 0.06914005,
    "outer_lower": 0.64,
    "inner_tail": 0.03,
    "outer_tail": 0.5,
    "derivative_range": (28.336, 139.082),
    "deformation_size": 0.005,
    "minimal_order": 629,
    "functional_0": 4.94357,
    "gap_constant": 5.0,
}

"""Published values that the reports compare against.

Kept as data so the comparisons stay separate from the invariants: a mismatch
here is reported as a discrepancy, never as a failure.
"""

# d = 1, h = 3: full-length distributions
PRIMITIVE_H3 = {
    5: "[ <0, 1>, <20, 744>, <24, 14880> ]",
    7: "[ <0, 1>, <42, 2736>, <48, 114912> ]",
    11: "[ <0, 1>, <110, 15960>, <120, 1755600> ]",
}

# d > 1 with m > p - 1, h = 3: the set of distinct distributions as d varies
IRREDUCIBLE_H3 = {
    5: [
        "[ <0, 1>, <12, 248>, <24, 15376> ]",
        "[ <0, 1>, <16, 372>, <24, 15252> ]",
    ],
    7: [
        "[ <0, 1>, <24, 684>, <48, 116964> ]",
        "[ <0, 1>, <36, 1368>, <48, 116280> ]",
    ],
    11: [
        "[ <0, 1>, <60, 2660>, <120, 1768900> ]",
        "[ <0, 1>, <80, 3990>, <120, 1767570> ]",
        "[ <0, 1>, <90, 5320>, <120, 1766240> ]",
        "[ <0, 1>, <100, 7980>, <120, 1763580> ]",
    ],
}

# (p, h, d) -> printed punctured distribution
PUNCTURED = {
    (7, 2, 2): "[ <0, 1>, <2, 96>, <4, 2304> ]",
}

# (p, h, d) -> printed (v, degree, eigenvalue pair, multiplicities or None)
GRAPHS = {
    (3, 3, 1): {"v": 729, "eta": 104, "eigenvalues": (23, -4), "multiplicities": (104, 624)},
    (2, 4, 1): {"v": 256, "eta": 45, "eigenvalues": (13, -3), "multiplicities": None},
    (7, 2, 2): {"v": 2401, "eta": 192, "eigenvalues": (94, -4), "multiplicities": None, "latin_square": False},
}

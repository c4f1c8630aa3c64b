from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoweight.codes import (
    BudgetExceeded,
    CodeSpec,
    DegenerateSpec,
    WeightDistribution,
    build_code,
    closed_form_distribution,
    codeword,
    distribution_report,
    divisors,
    enumerate_rows,
    hamming_weight,
    moment_holds,
    nondegenerate_ds,
    parse_paper,
    weight_distribution_enum,
    zero_locus_sizes,
)
from twoweight.ring import frobenius, ring_init, teich_digits

MATRIX = [CodeSpec(p, h, d) for p in (3, 5, 7) for h in (1, 2, 3) for d in divisors(p * p - 1)]


def brute_distribution(spec):
    """Codeword of every A through the scalar GRElem API, no vectorization."""
    R = ring_init(spec.p, spec.h)
    return WeightDistribution.from_counts(Counter(hamming_weight(codeword(A, spec, R)) for A in R.elements()))


def digit_trace(R, z):
    """Trace through the digit expansion, written out independently of the ring module."""
    acc = R.zero
    for i, t in enumerate(teich_digits(z)):
        acc = acc + (R.p**i) * (t + t**R.p)
    assert acc.c1 == 0
    return acc.c0


def test_spec_fields():
    s = CodeSpec(5, 3, 1)
    assert (s.n, s.m, s.degenerate, s.punctured_length) == (24, 4, False, 6)
    assert CodeSpec(5, 3, 6).degenerate
    assert CodeSpec(7, 2, 2).m == 12
    with pytest.raises(ValueError):
        CodeSpec(5, 3, 5)


def test_nondegenerate_ds():
    assert nondegenerate_ds(5) == [1, 2, 3, 4, 8]
    assert nondegenerate_ds(3) == [1, 2]


def test_build_code_shapes():
    G = build_code(CodeSpec(3, 1, 1))
    assert G.rows.shape == (2, 8)
    assert sum(enumerate_rows(G.rows, 3).values()) == 9
    G = build_code(CodeSpec(5, 3, 1))
    assert G.rows.shape == (2, 24)
    assert sum(enumerate_rows(G.rows, 125).values()) == 5**6


@pytest.mark.parametrize("d", [1, 2, 4])
def test_rows_against_digit_trace(d):
    spec = CodeSpec(3, 2, d)
    R = ring_init(3, 2)
    G = build_code(spec, R)
    for j in range(spec.n):
        x = R.xi ** (j * d)
        assert G.rows[0, j] == digit_trace(R, x)
        assert G.rows[1, j] == digit_trace(R, R.xi * x)


def test_rows_span_codewords():
    spec = CodeSpec(3, 2, 2)
    R = ring_init(3, 2)
    G = build_code(spec, R)
    for a in range(R.q):
        for b in range(R.q):
            A = R.elem(a) + b * R.xi
            assert codeword(A, spec, R) == ((a * G.rows[0] + b * G.rows[1]) % R.q).tolist()


def test_codeword_zero_and_lemma():
    spec = CodeSpec(5, 2, 1)
    R = ring_init(5, 2)
    assert hamming_weight(codeword(R.zero, spec, R)) == 0
    for A in [R.one, R.xi + 3, R.elem(5, 10)]:
        zeros = sum(1 for k in range(spec.n) if (A * R.xi**k + frobenius(A * R.xi**k)).c0 == 0)
        assert hamming_weight(codeword(A, spec, R)) == spec.n - zeros


@pytest.mark.parametrize("d", [1, 2, 4])
def test_scalar_invariance_exhaustive(d):
    spec = CodeSpec(3, 2, d)
    R = ring_init(3, 2)
    for A in R.elements():
        w = hamming_weight(codeword(A, spec, R))
        for u in (1, 2, 4, 5, 7, 8):
            assert hamming_weight(codeword(u * A, spec, R)) == w


@pytest.mark.parametrize("spec", [CodeSpec(3, 1, 1), CodeSpec(3, 2, 1), CodeSpec(3, 2, 2), CodeSpec(3, 2, 4), CodeSpec(5, 1, 2)])
def test_vectorized_matches_brute_force(spec):
    assert weight_distribution_enum(spec).entries == brute_distribution(spec).entries


@pytest.mark.parametrize(
    "p,expected",
    [
        (5, "[ <0, 1>, <20, 744>, <24, 14880> ]"),
        (7, "[ <0, 1>, <42, 2736>, <48, 114912> ]"),
    ],
)
def test_golden_primitive(p, expected):
    assert weight_distribution_enum(CodeSpec(p, 3, 1)).paper() == expected


def test_golden_primitive_p11_orbits():
    dist = weight_distribution_enum(CodeSpec(11, 3, 1), use_orbits=True)
    assert dist.paper() == "[ <0, 1>, <110, 15960>, <120, 1755600> ]"


def test_one_weight_h1():
    assert weight_distribution_enum(CodeSpec(3, 1, 1)).paper() == "[ <0, 1>, <6, 8> ]"


def test_budget_guard():
    spec = CodeSpec(11, 3, 1)
    with pytest.raises(BudgetExceeded):
        weight_distribution_enum(spec)
    with pytest.raises(BudgetExceeded):
        weight_distribution_enum(CodeSpec(5, 3, 1), budget=1000)


@pytest.mark.parametrize("spec", [s for s in MATRIX if s.p <= 5])
def test_orbits_match_naive(spec):
    assert weight_distribution_enum(spec, use_orbits=True) == weight_distribution_enum(spec)


def test_partitioning_does_not_matter():
    G = build_code(CodeSpec(5, 2, 2))
    ref = enumerate_rows(G.rows, 25)
    for chunks in (1, 3, 7, 25):
        assert enumerate_rows(G.rows, 25, chunks=chunks) == ref
    assert enumerate_rows(G.rows, 25, workers=2) == ref


@pytest.mark.parametrize("spec", MATRIX, ids=lambda s: s.label())
def test_matrix_invariants(spec):
    dist = weight_distribution_enum(spec)
    assert dist.total == spec.p ** (2 * spec.h)
    assert moment_holds(dist, spec.n, spec.q)
    if spec.degenerate:
        assert dist.as_dict()[0] > 1
        return
    assert dist.as_dict()[0] == 1
    assert set(dist.nonzero_weights) <= {spec.n - spec.m, spec.n}
    assert spec.n - spec.m in dist.nonzero_weights
    if spec.h == 1 and spec.m == spec.p - 1:
        assert dist.nonzero_weights == [spec.n - spec.m]


@pytest.mark.parametrize(
    "spec", [s for s in MATRIX if not s.degenerate and (s.h <= 2 or s.p <= 5)], ids=lambda s: s.label()
)
def test_zero_locus_law(spec):
    assert set(zero_locus_sizes(spec)) <= {0, spec.m}


def test_closed_forms():
    s = CodeSpec(5, 3, 1)
    for variant in ("theorem", "examples_consistent"):
        assert closed_form_distribution(s, variant).paper() == "[ <0, 1>, <20, 744>, <24, 14880> ]"
    s8 = CodeSpec(5, 3, 2)
    assert s8.m == 8
    assert closed_form_distribution(s8, "examples_consistent").paper() == "[ <0, 1>, <16, 372>, <24, 15252> ]"
    assert closed_form_distribution(s8, "theorem").as_dict()[16] == 3 * (9**3 - 1) == 2184
    with pytest.raises(DegenerateSpec):
        closed_form_distribution(CodeSpec(5, 3, 6))
    with pytest.raises(ValueError):
        closed_form_distribution(s, "nope")


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("h", [1, 2, 3, 4])
def test_variants_agree_when_m_is_p_minus_1(p, h):
    for d in divisors(p * p - 1):
        spec = CodeSpec(p, h, d)
        if spec.m == p - 1:
            assert closed_form_distribution(spec, "theorem").entries == closed_form_distribution(spec, "examples_consistent").entries


def test_report_primitive_agrees():
    rep = distribution_report(CodeSpec(7, 3, 1))
    assert rep.invariants_ok
    assert all(v.matches for v in rep.verdicts.values())


def test_report_flags_theorem_mismatch():
    rep = distribution_report(CodeSpec(11, 3, 2), use_orbits=True)
    assert rep.enumerated.paper() == "[ <0, 1>, <100, 7980>, <120, 1763580> ]"
    assert rep.verdicts["examples_consistent"].matches
    assert rep.verdicts["theorem"].matches is False
    diffs = dict((w, (a, b)) for w, a, b in rep.verdicts["theorem"].differences)
    assert diffs[100] == (7980, (120 // 20) * (21**3 - 1))


def test_report_degenerate():
    rep = distribution_report(CodeSpec(5, 3, 6))
    assert rep.two_weight_ok is None
    assert rep.verdicts["theorem"].matches is None
    assert rep.record()["degenerate"] is True


def test_report_p7_h2_d2():
    rep = distribution_report(CodeSpec(7, 2, 2))
    assert rep.enumerated.paper() == "[ <0, 1>, <36, 192>, <48, 2208> ]"


def test_paper_format_round_trip():
    text = "[ <0, 1>, <20, 744>, <24, 14880> ]"
    dist = parse_paper(text)
    assert dist.entries == ((0, 1), (20, 744), (24, 14880))
    assert dist.paper() == text
    assert parse_paper("[<0,1>,<2,96>,<4,2304>]").paper() == "[ <0, 1>, <2, 96>, <4, 2304> ]"
    with pytest.raises(ValueError):
        parse_paper("<0, 1>")


@given(st.dictionaries(st.integers(0, 500), st.integers(1, 10**9), min_size=1, max_size=8))
def test_paper_format_round_trip_property(counts):
    dist = WeightDistribution.from_counts(counts)
    assert parse_paper(dist.paper()) == dist


@settings(max_examples=1000)
@given(st.sampled_from([CodeSpec(5, 3, 1), CodeSpec(5, 3, 2), CodeSpec(7, 2, 3), CodeSpec(3, 4, 1)]), st.data())
def test_orbit_invariance_random(spec, data):
    """c(A * xi^(k d)) is a coordinate permutation of c(A), and unit scalars preserve weight."""
    R = ring_init(spec.p, spec.h)
    A = R.elem(data.draw(st.integers(0, R.q - 1)), data.draw(st.integers(0, R.q - 1)))
    k = data.draw(st.integers(0, spec.n - 1))
    u = data.draw(st.integers(1, R.q - 1).filter(lambda x: x % spec.p))
    base = codeword(A, spec, R)
    moved = codeword(u * A * R.xi ** (k * spec.d), spec, R)
    assert hamming_weight(moved) == hamming_weight(base)
    assert sorted(codeword(A * R.xi ** (k * spec.d), spec, R)) == sorted(base)


def test_h4_general_theorems():
    spec = CodeSpec(3, 4, 1)
    dist = weight_distribution_enum(spec)
    assert dist.total == 3**8
    assert dist.entries == closed_form_distribution(spec, "theorem").entries
    d2 = weight_distribution_enum(CodeSpec(3, 4, 2))
    assert d2.entries == closed_form_distribution(CodeSpec(3, 4, 2), "examples_consistent").entries
    assert moment_holds(dist, 8, 81) and moment_holds(d2, 8, 81)


def test_p11_naive_override_matches_orbits():
    spec = CodeSpec(11, 3, 1)
    naive = weight_distribution_enum(spec, override=True)
    assert naive.entries == weight_distribution_enum(spec, use_orbits=True).entries

import pytest

from app.config import settings
from app.errors import (
    BothZero,
    ModulusMismatch,
    NotCoprime,
    NotSplitSimple,
    PrereqViolated,
    ScanCapExceeded,
    WrongValuation,
)
from app.schemas import Pattern
from app.services.modular import lift_factorization
from app.services.patterns import (
    build_profile,
    count_gcd_tuples,
    count_gcd_tuples_mod4,
    count_poly_functions,
    deg1_pattern,
    delta_valuation_split,
    extract_pattern,
    extract_patterns,
    falling_factorial,
    gcd_value,
    p_part,
    rotation_offset,
    simpleroots_factorizations,
    simpleroots_gcd,
    validate_valpresone,
    valuation_gap_check,
    verify_constraint,
    xpow_plus_one_analysis,
)
from app.services.poly import parse_poly

RUNNING_TABLE = [3, 2, 1, 12, 1, 2, 3, 52, 1, 6, 1, 4, 3, 2, 1, 12, 1, 2, 3, 4, 13, 6, 1, 4, 3, 2, 1, 12, 1, 2]


def P(text):
    return parse_poly(text)


@pytest.mark.parametrize(
    "a, b, n, value",
    [("x^3-5x^2+10x-12", "x^2+3", 7, 52), ("x^2-32x+135", "x^2+3x+9", 27, 819), ("x", "x-1", 10, 1)],
)
def test_gcd_value(a, b, n, value):
    assert gcd_value(P(a), P(b), n) == value


def test_gcd_value_both_zero():
    with pytest.raises(BothZero):
        gcd_value(P("x^2-1"), P("x-1"), 1)


@pytest.mark.parametrize("N, p, part", [(12, 2, 4), (819, 13, 13), (1, 5, 1), (5733, 7, 49)])
def test_p_part(N, p, part):
    assert p_part(N, p) == part


def test_extract_pattern_running_example(running_pair):
    A, B = running_pair
    assert extract_pattern(A, B, 2, 2).values == [1, 2, 1, 4]
    assert extract_pattern(A, B, 3, 1).values == [3, 1, 1]
    m13 = extract_pattern(A, B, 13, 1)
    assert m13.length == 13
    assert m13.values.index(13) == 7
    assert validate_valpresone(m13, 1)


def test_extract_pattern_example(example_pair):
    A, B = example_pair
    m3 = extract_pattern(A, B, 3, 2)
    assert m3.values == [9, 1, 1, 3, 1, 1, 3, 1, 1]
    assert m3.mu == 2
    m7 = extract_pattern(A, B, 7, 3)
    assert m7.length == 49
    assert m7.values[:15] == [1, 1, 1, 1, 1, 49, 7, 1, 1, 1, 1, 1, 7, 7, 1]
    m13 = extract_pattern(A, B, 13, 1)
    assert m13.values.index(13) == 1


def test_extract_pattern_shrinks_to_minimal_period():
    # resultant 64 = 2^6, but the pattern repeats every 4
    pat = extract_pattern(P("x^2+4"), P("x^2-4"), 2, 6)
    assert pat.values == [4, 1, 8, 1]
    assert pat.mu == 2
    assert extract_pattern(P("x"), P("x-1"), 2, 0).values == [1]


def test_extract_pattern_scan_cap(monkeypatch):
    monkeypatch.setattr(settings, "scan_cap", 100)
    with pytest.raises(ScanCapExceeded):
        extract_pattern(P("x^2+27"), P("x^2-18x+108"), 3, 7)


def test_extract_patterns_concurrent_matches_sequential(example_pair, monkeypatch):
    A, B = example_pair
    factorization = {3: 2, 7: 3, 13: 1}
    sequential = extract_patterns(A, B, factorization)
    monkeypatch.setattr(settings, "concurrency_limit", 3)
    assert extract_patterns(A, B, factorization) == sequential
    assert list(sequential) == [3, 7, 13]


def test_build_profile_running_example(running_pair):
    A, B = running_pair
    profile = build_profile(A, B)
    assert profile.resultant_report.delta_abs == 156
    assert profile.global_period == 156
    assert profile.value_set == [1, 2, 3, 4, 6, 12, 13, 26, 39, 52, 78, 156]
    assert max(profile.value_set) == 156
    assert [profile.reconstruct(n) for n in range(30)] == RUNNING_TABLE
    assert all(c.holds for c in profile.checks)


def test_build_profile_example(example_pair):
    A, B = example_pair
    profile = build_profile(A, B)
    assert profile.global_period == 5733
    assert profile.value_set == [
        1, 3, 7, 9, 13, 21, 39, 49, 63, 91, 117, 147, 273, 441, 637, 819, 1911, 5733,
    ]
    assert profile.reconstruct(27) == 819
    assert all(c.holds for c in profile.checks)


def test_build_profile_trivial():
    profile = build_profile(P("x"), P("x-1"))
    assert profile.patterns == {}
    assert profile.global_period == 1
    assert profile.value_set == [1]
    assert profile.resultant_report.delta_abs == 1


def test_build_profile_multiple_roots():
    profile = build_profile(P("x^2+27"), P("x^2-18x+108"))
    assert profile.delta == 1701
    assert profile.patterns[3].values == [27, 1, 1, 9, 1, 1, 9, 1, 1]
    assert profile.patterns[7].length == 7
    assert profile.global_period == 63
    assert all(c.holds for c in profile.checks)

    eight = build_profile(P("x^2+8x+7"), P("x^2+8x+15"))
    assert (eight.resultant_report.delta_abs, eight.delta) == (64, 8)
    assert eight.patterns[2].values == [1, 8]


def test_build_profile_two_sided_reconstruction(running_pair):
    A, B = running_pair
    profile = build_profile(A, B)
    period = profile.global_period
    for n in range(-3 * period, 3 * period + 1):
        assert gcd_value(A, B, n) == profile.reconstruct(n)


def test_build_profile_window_and_errors(running_pair, monkeypatch):
    A, B = running_pair
    profile = build_profile(A, B, window=400)
    assert profile.checks[0].detail == "n in [0, 400)"
    with pytest.raises(NotCoprime):
        build_profile(P("x^2-1"), P("x+1"))
    monkeypatch.setattr(settings, "scan_cap", 100)
    with pytest.raises(ScanCapExceeded):
        build_profile(A, B)


def test_patterns_have_minimal_period(example_pair):
    A, B = example_pair
    for pat in build_profile(A, B).patterns.values():
        for m in range(pat.mu):
            length = pat.p ** m
            assert any(pat.values[i] != pat.values[i % length] for i in range(pat.length))


@pytest.mark.parametrize(
    "a, b, pairs, lhs, rhs",
    [
        ("x^2-9x+16", "x^2-7x+12", [(0, 4), (4, 4)], 16, 32),
        ("x^3-5x^2+10x-12", "x^2+3", [(7, 52)], 52, 156),
        ("x^2-32x+135", "x^2+3x+9", [(5, 7), (12, 7), (13, 7)], 343, 40131 * 7 * 8 * 1),
    ],
)
def test_verify_constraint(a, b, pairs, lhs, rhs):
    report = verify_constraint(P(a), P(b), pairs)
    assert (report.lhs, report.rhs) == (lhs, rhs)
    assert report.holds


def test_verify_constraint_preconditions(delta_pair):
    A, B = delta_pair
    with pytest.raises(PrereqViolated):
        verify_constraint(A, B, [(0, 8)])
    with pytest.raises(PrereqViolated):
        verify_constraint(A, B, [(0, 4), (0, 4)])
    with pytest.raises(PrereqViolated):
        verify_constraint(A, B, [(n, 1) for n in range(5)])
    with pytest.raises(PrereqViolated):
        verify_constraint(P("2x+1"), B, [(0, 1)])


@pytest.mark.parametrize(
    "a, b, n1, n2, p, lhs, rhs",
    [
        ("x^3-5x^2+10x-12", "x^2+3", 3, 7, 2, 2, 2),
        ("x^2-32x+135", "x^2+3x+9", 5, 12, 7, 1, 0),
        ("x^3-5x^2+10x-12", "x^2+3", 2, 4, 2, 1, -2),
    ],
)
def test_valuation_gap_check(a, b, n1, n2, p, lhs, rhs):
    report = valuation_gap_check(P(a), P(b), n1, n2, p)
    assert (report.lhs, report.rhs) == (lhs, rhs)
    assert report.holds


def test_valuation_gap_needs_distinct_points(running_pair):
    with pytest.raises(PrereqViolated):
        valuation_gap_check(*running_pair, 3, 3, 2)


def test_validate_valpresone():
    assert validate_valpresone(Pattern(p=3, mu=1, values=[3, 1, 1]), 1)
    assert not validate_valpresone(Pattern(p=5, mu=1, values=[5, 5, 1, 1, 1]), 1)
    with pytest.raises(WrongValuation):
        validate_valpresone(Pattern(p=3, mu=1, values=[3, 1, 1]), 2)


def test_deg1_pattern_closed_form():
    result = deg1_pattern(P("x"), P("x^2+3"), 3)
    assert result.pattern.values == [3, 1, 1]
    assert result.anchor == 0
    assert not result.used_fallback

    result = deg1_pattern(P("2x-1"), P("x^2+x+1"), 7)
    assert result.anchor == 4
    assert result.pattern.values == [1, 1, 1, 1, 7, 1, 1]
    assert result.pattern == extract_pattern(P("2x-1"), P("x^2+x+1"), 7, 1)


def test_deg1_pattern_no_common_prime():
    result = deg1_pattern(P("x-1"), P("x"), 5)
    assert result.pattern.values == [1]


def test_deg1_pattern_falls_back(caplog):
    result = deg1_pattern(P("2x+4"), P("x^2+3"), 7)
    assert result.used_fallback
    assert result.anchor is None
    assert validate_valpresone(result.pattern, 1)
    assert "closed form does not apply" in caplog.text


@pytest.mark.parametrize(
    "a, b, offset",
    [([3, 1, 1], [3, 1, 1], 0), ([3, 1, 1], [1, 1, 3], 1), ([3, 1, 1], [1, 3, 1], 2), ([3, 1, 1], [3, 3, 1], None)],
)
def test_rotation_offset(a, b, offset):
    assert rotation_offset(a, b) == offset


def test_simpleroots_gcd(delta_pair, example_pair):
    fA, fB = simpleroots_factorizations(*delta_pair, 2)
    assert (fA.roots, fB.roots) == ([0, 1], [0, 3])
    assert [simpleroots_gcd(fA, fB, n) for n in range(4)] == [4, 2, 2, 2]

    fA, fB = simpleroots_factorizations(*example_pair, 13)
    assert simpleroots_gcd(fA, fB, 1) == 13
    assert simpleroots_gcd(fA, fB, 2) == 1


@pytest.mark.parametrize("pair_name, p", [("delta_pair", 2), ("example_pair", 7), ("example_pair", 13)])
def test_simpleroots_gcd_matches_values(pair_name, p, request):
    A, B = request.getfixturevalue(pair_name)
    fA, fB = simpleroots_factorizations(A, B, p)
    for n in range(-60, 60):
        assert simpleroots_gcd(fA, fB, n) == p_part(gcd_value(A, B, n), p)


def test_simpleroots_modulus_mismatch(delta_pair):
    A, B = delta_pair
    with pytest.raises(ModulusMismatch):
        simpleroots_gcd(lift_factorization(A, 2, 2), lift_factorization(B, 2, 3), 0)


def test_delta_valuation_split(delta_pair, example_pair):
    report = delta_valuation_split(*delta_pair, 2)
    assert report.mu == 2 and report.nu_p_delta == 2
    assert (report.pattern_length, report.pattern_max) == (4, 4)
    assert report.holds

    assert delta_valuation_split(P("x"), P("x-1"), 2).mu == 0
    assert delta_valuation_split(*example_pair, 7).mu == 2
    assert delta_valuation_split(*example_pair, 13).mu == 1


@pytest.mark.parametrize("a, b, p", [("x^2+8x+7", "x^2+8x+15", 2), ("x^2+27", "x^2-18x+108", 3)])
def test_delta_valuation_split_refuses_multiple_roots(a, b, p):
    with pytest.raises(NotSplitSimple):
        delta_valuation_split(P(a), P(b), p)


@pytest.mark.parametrize("a, b", [(1, 2), (2, 4), (2, 3), (4, 1)])
def test_xpow_plus_one_coprime(a, b):
    report = xpow_plus_one_analysis(a, b)
    assert report.coprime
    assert report.pattern == [1, 2]
    assert report.window == 64
    assert report.delta == 2
    assert report.ideal_contains_two


@pytest.mark.parametrize("a, b, factor", [(3, 5, "x + 1"), (2, 6, "x^2 + 1"), (1, 1, "x + 1")])
def test_xpow_plus_one_common_factor(a, b, factor):
    report = xpow_plus_one_analysis(a, b)
    assert not report.coprime
    assert str(report.common_factor) == factor


def test_xpow_plus_one_reports_cyclotomic_gcd():
    assert str(xpow_plus_one_analysis(6, 4).cyclotomic_gcd) == "x^2 - 1"


def test_falling_factorial():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(3, 4) == 0


@pytest.mark.parametrize("m, count", [(4, 64), (1, 1), (2, 4), (3, 27)])
def test_count_poly_functions(m, count):
    assert count_poly_functions(m) == count


def test_count_gcd_tuples():
    assert count_gcd_tuples_mod4() == 25
    assert count_gcd_tuples(2) == 4
    assert count_gcd_tuples(1) == 1

import random

import pytest

from app.errors import PolySyntaxError
from app.services.poly import (
    X,
    IntPoly,
    NEG_INF,
    content,
    cyclotomic_style_gcd,
    derivative,
    evaluate,
    format_poly,
    from_roots,
    parse_poly,
    poly_divmod,
)


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^3-5x^2+10x-12", (-12, 10, -5, 1)),
        ("0", ()),
        ("x^2 - 18x + 108", (108, -18, 1)),
        ("-x^2+3", (3, 0, -1)),
        ("3*x^2 + x + x", (0, 2, 3)),
        ("+7", (7,)),
        ("x^2 - x^2", ()),
    ],
)
def test_parse(text, coeffs):
    assert parse_poly(text).coeffs == coeffs


@pytest.mark.parametrize(
    "text, message, position",
    [
        ("", "empty polynomial", 0),
        ("   ", "empty polynomial", 0),
        ("x^2 +", "dangling operator", 5),
        ("x^^2", "unexpected character", 1),
        ("3*", "'*' must join", 1),
        ("+-x", "expected a term", 1),
        ("2y", "unexpected character", 1),
    ],
)
def test_parse_errors(text, message, position):
    with pytest.raises(PolySyntaxError) as info:
        parse_poly(text)
    assert message in str(info.value)
    assert info.value.position == position
    assert info.value.code == "E_SYNTAX"


@pytest.mark.parametrize(
    "coeffs, text",
    [
        ((-12, 10, -5, 1), "x^3 - 5x^2 + 10x - 12"),
        ((3, 0, -1), "-x^2 + 3"),
        ((), "0"),
        ((0, 2), "2x"),
        ((-1,), "-1"),
    ],
)
def test_format(coeffs, text):
    assert format_poly(IntPoly.from_coeffs(coeffs)) == text


def test_format_parses_back():
    rng = random.Random(7)
    for _ in range(100):
        P = IntPoly.from_coeffs(rng.randint(-10**6, 10**6) for _ in range(rng.randint(0, 9)))
        assert parse_poly(format_poly(P)) == P


def test_zero_polynomial():
    zero = IntPoly()
    assert zero.is_zero()
    assert zero.degree == NEG_INF
    assert zero.degree < 0
    assert IntPoly.from_coeffs([0, 0, 0]) == zero


@pytest.mark.parametrize(
    "text, n, value",
    [("x^3-5x^2+10x-12", 0, -12), ("x^2+3", 7, 52), ("x^2-9x+16", 0, 16), ("x^2+3", -10**30, 10**60 + 3)],
)
def test_evaluate(text, n, value):
    P = parse_poly(text)
    assert evaluate(P, n) == value
    assert P(n) == value


@pytest.mark.parametrize(
    "text, expected",
    [("x^2+3", "2x"), ("7", "0"), ("x^3-5x^2+10x-12", "3x^2 - 10x + 10")],
)
def test_derivative(text, expected):
    assert str(derivative(parse_poly(text))) == expected


@pytest.mark.parametrize("text, expected", [("2x-10", 2), ("-2x+14", 2), ("0", 0), ("6x^2+9", 3)])
def test_content(text, expected):
    assert content(parse_poly(text)) == expected


def test_evaluation_is_a_ring_map():
    rng = random.Random(11)
    for _ in range(50):
        P = IntPoly.from_coeffs(rng.randint(-50, 50) for _ in range(rng.randint(0, 6)))
        Q = IntPoly.from_coeffs(rng.randint(-50, 50) for _ in range(rng.randint(0, 6)))
        c = rng.randint(-20, 20)
        for n in (-7, 0, 3, 12345):
            assert (P + Q)(n) == P(n) + Q(n)
            assert (P * Q)(n) == P(n) * Q(n)
        assert content(c * P) == abs(c) * content(P)


def test_arithmetic_with_ints():
    P = X * X + 3
    assert P == parse_poly("x^2+3")
    assert 1 - X == parse_poly("-x+1")
    assert (P - P).is_zero()


@pytest.mark.parametrize("a, b, expected", [(6, 4, "x^2 - 1"), (5, 5, "x^5 - 1"), (7, 3, "x - 1"), (1, 9, "x - 1")])
def test_cyclotomic_style_gcd(a, b, expected):
    assert str(cyclotomic_style_gcd(a, b)) == expected


def test_cyclotomic_style_gcd_rejects_zero_exponent():
    with pytest.raises(ValueError):
        cyclotomic_style_gcd(0, 3)


def test_poly_divmod():
    f = parse_poly("x^3-5x^2+10x-12")
    g = parse_poly("x^2+3")
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
    with pytest.raises(ValueError):
        poly_divmod(f, parse_poly("2x+1"))
    with pytest.raises(ZeroDivisionError):
        poly_divmod(f, IntPoly())


def test_from_roots():
    assert from_roots([5, 27]) == parse_poly("x^2-32x+135")
    assert from_roots([]) == IntPoly.constant(1)


def test_reduce_and_exact_div():
    P = parse_poly("-2x+14")
    assert P.reduce_mod(4) == parse_poly("2x+2")
    assert P.exact_div(2) == parse_poly("-x+7")
    with pytest.raises(ValueError):
        P.exact_div(4)

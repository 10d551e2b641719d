import pytest
import sympy

from app.config import settings
from app.services.poly import IntPoly, parse_poly

RUNNING_PAIR = ("x^3-5x^2+10x-12", "x^2+3")
EXAMPLE_PAIR = ("x^2-32x+135", "x^2+3x+9")  # (x-5)(x-27), x^2+3x+9
DELTA_PAIR = ("x^2-9x+16", "x^2-7x+12")
PLUS_MINUS_FOUR = ("x^2+4", "x^2-4")
MULTIPLE_ROOT_PAIR = ("x^2+27", "x^2-18x+108")
EIGHT_PAIR = ("x^2+8x+7", "x^2+8x+15")  # (x+1)(x+7), (x+3)(x+5)


def pair(texts):
    return parse_poly(texts[0]), parse_poly(texts[1])


@pytest.fixture
def running_pair():
    return pair(RUNNING_PAIR)


@pytest.fixture
def example_pair():
    return pair(EXAMPLE_PAIR)


@pytest.fixture
def delta_pair():
    return pair(DELTA_PAIR)


@pytest.fixture
def small_scan_cap(monkeypatch):
    monkeypatch.setattr(settings, "scan_cap", 20000)
    return 20000


@pytest.fixture
def to_sympy():
    x = sympy.Symbol("x")

    def convert(P: IntPoly):
        return sympy.Poly(list(reversed(P.coeffs)) or [0], x)

    return convert

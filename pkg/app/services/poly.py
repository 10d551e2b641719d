"""Dense integer polynomials: representation, parsing, printing, evaluation and elementary algebra.

Coefficients are stored in ascending order (``coeffs[k]`` is the coefficient
of x^k) with no trailing zeros, so the zero polynomial is the empty tuple.
"""
from __future__ import annotations

import math
import re
from functools import reduce
from typing import Dict, Iterable, List, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator

from app.config import setup_logging
from app.errors import PolySyntaxError

logger = setup_logging("poly")

# Degree of the zero polynomial; compares below every integer degree.
NEG_INF = float("-inf")
Degree = Union[int, float]

_TERM_RE = re.compile(r"(?P<coef>[0-9]+)?(?P<star>\*)?(?P<var>x(?:\^(?P<exp>[0-9]+))?)?")


class IntPoly(BaseModel):
    """Immutable dense polynomial with arbitrary-precision integer coefficients."""

    model_config = ConfigDict(frozen=True)

    coeffs: Tuple[int, ...] = ()

    @field_validator("coeffs")
    @classmethod
    def _strip_trailing_zeros(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        end = len(v)
        while end and v[end - 1] == 0:
            end -= 1
        return tuple(v[:end])

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(coeffs=tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls(coeffs=(c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        return cls(coeffs=(0,) * k + (c,))

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return self.leading == 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def __str__(self) -> str:
        return format_poly(self)

    def __neg__(self) -> "IntPoly":
        return IntPoly.from_coeffs(-c for c in self.coeffs)

    def __add__(self, other: "PolyLike") -> "IntPoly":
        o = _as_poly(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return IntPoly.from_coeffs(self.coeff(k) + o.coeff(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other: "PolyLike") -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "PolyLike") -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other: "PolyLike") -> "IntPoly":
        o = _as_poly(other)
        if self.is_zero() or o.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return IntPoly.from_coeffs(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return IntPoly.from_coeffs((0,) * k + self.coeffs)

    def reduce_mod(self, m: int) -> "IntPoly":
        """Coefficients reduced into [0, m)."""
        return IntPoly.from_coeffs(c % m for c in self.coeffs)

    def exact_div(self, g: int) -> "IntPoly":
        if g == 0 or any(c % g for c in self.coeffs):
            raise ValueError(f"{g} does not divide every coefficient of {self}")
        return IntPoly.from_coeffs(c // g for c in self.coeffs)


PolyLike = Union[IntPoly, int]


def _as_poly(value: PolyLike) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly.constant(value)
    raise TypeError(f"cannot combine IntPoly with {type(value).__name__}")


X = IntPoly(coeffs=(0, 1))


def parse_poly(text: str) -> IntPoly:
    """Parse ``poly := term (('+'|'-') term)*`` with ``term := [integer]['*']['x'['^' n]]``.

    Whitespace is ignored, a leading sign is accepted and repeated powers are summed.
    """
    chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
    compact = "".join(ch for _, ch in chars)

    def origin(k: int) -> int:
        return chars[k][0] if k < len(chars) else len(text)

    if not compact:
        raise PolySyntaxError("empty polynomial", text, 0)

    acc: Dict[int, int] = {}
    pos = 0
    sign = 1
    if compact[0] in "+-":
        sign = -1 if compact[0] == "-" else 1
        pos = 1

    while True:
        m = _TERM_RE.match(compact, pos)
        coef, star, var, exp = m.group("coef", "star", "var", "exp")
        if not coef and not var:
            raise PolySyntaxError("expected a term", text, origin(pos))
        if star and not (coef and var):
            raise PolySyntaxError("'*' must join a coefficient and x", text, origin(m.start("star")))
        c = int(coef) if coef else 1
        k = int(exp) if exp is not None else (1 if var else 0)
        acc[k] = acc.get(k, 0) + sign * c
        pos = m.end()
        if pos == len(compact):
            break
        op = compact[pos]
        if op not in "+-":
            raise PolySyntaxError(f"unexpected character {op!r}", text, origin(pos))
        sign = 1 if op == "+" else -1
        pos += 1
        if pos == len(compact):
            raise PolySyntaxError("dangling operator", text, origin(pos))

    top = max(acc)
    return IntPoly.from_coeffs(acc.get(k, 0) for k in range(top + 1))


def format_poly(P: IntPoly) -> str:
    """Descending powers, zero terms omitted, ``"0"`` for the zero polynomial."""
    if P.is_zero():
        return "0"
    parts: List[str] = []
    for k in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def evaluate(P: IntPoly, n: int) -> int:
    """Horner evaluation, exact."""
    acc = 0
    for c in reversed(P.coeffs):
        acc = acc * n + c
    return acc


def derivative(P: IntPoly) -> IntPoly:
    return IntPoly.from_coeffs(k * c for k, c in enumerate(P.coeffs) if k > 0)


def content(P: IntPoly) -> int:
    # gcd over an empty sequence is 0
    return reduce(math.gcd, P.coeffs, 0)


def from_roots(roots: Iterable[int]) -> IntPoly:
    """Expand prod(x - r)."""
    out = IntPoly.constant(1)
    for r in roots:
        out = out * IntPoly(coeffs=(-r, 1))
    return out


def poly_divmod(f: IntPoly, g: IntPoly) -> Tuple[IntPoly, IntPoly]:
    """Euclidean division by ``g`` whose leading coefficient is a unit of Z."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead = g.leading
    if lead not in (1, -1):
        raise ValueError(f"divisor {g} must have leading coefficient 1 or -1")
    dg = len(g.coeffs) - 1
    rem = list(f.coeffs)
    quot = [0] * max(len(rem) - dg, 0)
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k] * lead
        if c == 0:
            continue
        quot[k - dg] = c
        for j, gc in enumerate(g.coeffs):
            rem[k - dg + j] -= c * gc
    return IntPoly.from_coeffs(quot), IntPoly.from_coeffs(rem)


def x_power_minus_one(k: int) -> IntPoly:
    """x^k - 1 (the zero polynomial for k = 0)."""
    return IntPoly.monomial(1, k) - 1


def cyclotomic_style_gcd(a: int, b: int) -> IntPoly:
    """gcd(x^a - 1, x^b - 1) by polynomial Euclid; each remainder is x^(a mod b) - 1."""
    if a < 1 or b < 1:
        raise ValueError("exponents must be positive")
    f, g = x_power_minus_one(a), x_power_minus_one(b)
    ea, eb = a, b
    while not g.is_zero():
        _, r = poly_divmod(f, g)
        e_next = ea % eb
        if r != x_power_minus_one(e_next):
            raise RuntimeError(f"remainder of x^{ea}-1 by x^{eb}-1 is {r}, expected x^{e_next}-1")
        logger.debug("euclid step on exponents: (%s, %s) -> (%s, %s)", ea, eb, eb, e_next)
        f, g, ea, eb = g, r, eb, e_next
    return f

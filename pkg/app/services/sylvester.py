"""Exact resultants via the Sylvester matrix, integer Bezout certificates and the minimal Bezout constant.

Layout convention: rows of the Sylvester matrix run over the powers
x^(d+e-1), ..., x, 1; column j < e holds x^(e-1-j) * A and column e + j holds
x^(d-1-j) * B. A column vector W = (U, V) in the same reverse basis then
satisfies S * W = coefficients of A*U + B*V.
"""
from math import gcd
from typing import Dict, List, Optional, Sequence

from sympy import isprime

from app.config import settings, setup_logging
from app.errors import DegreeTooSmall, FactorizationIncomplete, NotCoprime
from app.schemas import BezoutCertificate, DeltaReport, ResultantReport, SylvesterMatrix
from app.services.numtheory import xgcd
from app.services.poly import IntPoly, content

logger = setup_logging("sylvester")

Matrix = List[List[int]]


def _require_nonconstant(A: IntPoly, B: IntPoly) -> None:
    if A.degree < 1 or B.degree < 1:
        raise DegreeTooSmall(
            f"both polynomials must be nonconstant (degrees {A.degree} and {B.degree})"
        )


def _descending(P: IntPoly, size: int) -> List[int]:
    return [P.coeff(size - 1 - r) for r in range(size)]


def sylvester_matrix(A: IntPoly, B: IntPoly) -> SylvesterMatrix:
    _require_nonconstant(A, B)
    d, e = int(A.degree), int(B.degree)
    n = d + e
    entries = [[0] * n for _ in range(n)]
    for j in range(e):
        for k, c in enumerate(A.coeffs):
            entries[n - 1 - (k + e - 1 - j)][j] = c
    for j in range(d):
        for k, c in enumerate(B.coeffs):
            entries[n - 1 - (k + d - 1 - j)][e + j] = c
    return SylvesterMatrix(entries=entries, d=d, e=e)


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    M = [list(row) for row in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def adjugate_last_column(matrix: Sequence[Sequence[int]]) -> List[int]:
    """S* E for E = (0, ..., 0, 1): the cofactors of the last row, one minor per entry."""
    n = len(matrix)
    if n == 1:
        return [1]
    last = n - 1
    upper = [list(row) for row in matrix[:last]]
    out = []
    for i in range(n):
        minor = [row[:i] + row[i + 1:] for row in upper]
        out.append((-1) ** (last + i) * bareiss_determinant(minor))
    return out


def resultant(A: IntPoly, B: IntPoly) -> int:
    return bareiss_determinant(sylvester_matrix(A, B).entries)


def _check_identity(A: IntPoly, B: IntPoly, cert: BezoutCertificate) -> None:
    if A * cert.U + B * cert.V != IntPoly.constant(cert.value):
        raise RuntimeError(f"Bezout identity failed for A={A}, B={B}: U={cert.U}, V={cert.V}")
    if cert.U.degree >= B.degree or cert.V.degree >= A.degree:
        raise RuntimeError(f"Bezout cofactors exceed the degree bounds: U={cert.U}, V={cert.V}")


def bezout_certificate(A: IntPoly, B: IntPoly) -> BezoutCertificate:
    """U, V with A*U + B*V = |resultant|, read off the last adjugate column."""
    S = sylvester_matrix(A, B)
    delta = bareiss_determinant(S.entries)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    W = adjugate_last_column(S.entries)
    d, e = S.d, S.e
    U = IntPoly.from_coeffs(W[e - 1 - k] for k in range(e))
    V = IntPoly.from_coeffs(W[e + d - 1 - k] for k in range(d))
    if delta < 0:
        U, V = -U, -V
    cert = BezoutCertificate(U=U, V=V, value=abs(delta))
    if settings.self_check:
        _check_identity(A, B, cert)
    return cert


def minimal_delta(A: IntPoly, B: IntPoly) -> BezoutCertificate:
    """Divide the resultant certificate by gcd(c(U), c(V))."""
    cert = bezout_certificate(A, B)
    g = gcd(content(cert.U), content(cert.V))
    out = BezoutCertificate(U=cert.U.exact_div(g), V=cert.V.exact_div(g), value=cert.value // g)
    if settings.self_check:
        _check_identity(A, B, out)
    logger.debug("delta for (%s, %s): resultant %s / content %s = %s", A, B, cert.value, g, out.value)
    return out


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form by unimodular extended-gcd row operations.

    Pivots are positive, entries above a pivot are reduced into [0, pivot) and
    zero rows are dropped.
    """
    basis = [list(r) for r in rows]
    if not basis:
        return []
    n_cols = len(basis[0])
    top = 0
    for col in range(n_cols):
        pivot: Optional[int] = None
        for i in range(top, len(basis)):
            if basis[i][col] == 0:
                continue
            if pivot is None:
                basis[top], basis[i] = basis[i], basis[top]
                pivot = top
                continue
            a, b = basis[pivot][col], basis[i][col]
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            row_p, row_i = basis[pivot], basis[i]
            basis[pivot] = [x * u + y * v for u, v in zip(row_p, row_i)]
            basis[i] = [ag * v - bg * u for u, v in zip(row_p, row_i)]
        if pivot is None:
            continue
        if basis[pivot][col] < 0:
            basis[pivot] = [-v for v in basis[pivot]]
        h = basis[pivot][col]
        for k in range(pivot):
            q = basis[k][col] // h
            if q:
                basis[k] = [u - q * v for u, v in zip(basis[k], basis[pivot])]
        top += 1
    return basis[:top]


def delta_lattice_oracle(A: IntPoly, B: IntPoly) -> int:
    """Smallest positive constant A*U + B*V with deg U < deg B, deg V < deg A.

    Rows are x^i A (i < e) and x^j B (j < d) in descending powers, so the
    constant term is the last column and its HNF pivot generates the constants
    of the lattice.
    """
    _require_nonconstant(A, B)
    d, e = int(A.degree), int(B.degree)
    n = d + e
    rows = [_descending(A.shift(i), n) for i in range(e)]
    rows += [_descending(B.shift(j), n) for j in range(d)]
    hnf = hermite_normal_form(rows)
    if len(hnf) < n:
        raise NotCoprime(f"{A} and {B} share a root (lattice has rank {len(hnf)} < {n})")
    return hnf[-1][-1]


def factorize_abs_delta(delta_abs: int, trial_bound: Optional[int] = None) -> Dict[int, int]:
    """Prime factorization by trial division; a leftover cofactor must be prime."""
    if delta_abs < 1:
        raise ValueError("expected a positive integer")
    bound = settings.trial_division_bound if trial_bound is None else trial_bound
    n = delta_abs
    out: Dict[int, int] = {}
    d = 2
    # stop dividing as soon as the cofactor is prime
    if isprime(n):
        d = n
    while d * d <= n and d <= bound:
        if n % d == 0:
            while n % d == 0:
                out[d] = out.get(d, 0) + 1
                n //= d
            if isprime(n):
                break
        d += 1 if d == 2 else 2
    if n > 1:
        if d * d > n or isprime(n):
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorizationIncomplete(
                f"cofactor {n} of {delta_abs} is composite beyond the trial bound {bound}", cofactor=n
            )
    return dict(sorted(out.items()))


def resultant_report(A: IntPoly, B: IntPoly) -> ResultantReport:
    delta = resultant(A, B)
    if delta == 0:
        return ResultantReport(delta_signed=0, delta_abs=0, factorization={}, certificate=None)
    return ResultantReport(
        delta_signed=delta,
        delta_abs=abs(delta),
        factorization=factorize_abs_delta(abs(delta)),
        certificate=bezout_certificate(A, B),
    )


def delta_report(A: IntPoly, B: IntPoly) -> DeltaReport:
    """Both delta routes side by side; disagreement is flagged, never hidden."""
    cert = minimal_delta(A, B)
    lattice = delta_lattice_oracle(A, B)
    agree = cert.value == lattice
    certified = abs(A.leading) == 1 or abs(B.leading) == 1
    if not agree:
        logger.warning("delta routes disagree for (%s, %s): content %s, lattice %s", A, B, cert.value, lattice)
    if not certified:
        logger.warning("neither %s nor %s is monic: delta minimality is not certified", A, B)
    return DeltaReport(
        resultant=abs(resultant(A, B)),
        ayad=cert,
        lattice=lattice,
        agree=agree,
        certified_minimal=certified,
    )

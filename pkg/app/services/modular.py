"""Arithmetic modulo p and p^k: root scans, split-simple detection, Hensel lifting, gcd over GF(p)."""
from typing import List

from sympy import isprime

from app.config import settings, setup_logging
from app.errors import (
    NotARoot,
    NotCoprime,
    NotMonic,
    NotPrime,
    NotSimpleRoot,
    NotSplitSimple,
    ScanCapExceeded,
    ZeroModP,
)
from app.schemas import PrimePower, ResModPReport, SplitFactorization
from app.services.numtheory import inverse_mod, valuation
from app.services.poly import IntPoly, derivative, from_roots
from app.services.sylvester import resultant

logger = setup_logging("modular")


def require_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


def require_monic(P: IntPoly) -> None:
    if not P.is_monic():
        raise NotMonic(f"{P} is not monic")


def eval_mod(P: IntPoly, n: int, m: int) -> int:
    acc = 0
    for c in reversed(P.coeffs):
        acc = (acc * n + c) % m
    return acc


def roots_mod_p(P: IntPoly, p: int) -> List[int]:
    """All residues in [0, p) where P vanishes mod p, by exhaustive scan."""
    require_prime(p)
    if p > settings.max_scan_prime:
        raise ScanCapExceeded(f"root scan mod {p} exceeds the cap {settings.max_scan_prime}")
    if P.reduce_mod(p).is_zero():
        raise ZeroModP(f"every coefficient of {P} is divisible by {p}")
    return [r for r in range(p) if eval_mod(P, r, p) == 0]


def is_split_simple_mod_p(P: IntPoly, p: int) -> bool:
    require_monic(P)
    roots = roots_mod_p(P, p)
    if len(roots) != P.degree:
        return False
    dP = derivative(P)
    return all(eval_mod(dP, r, p) != 0 for r in roots)


def hensel_lift_root(P: IntPoly, rho: int, p: int, omega: int) -> int:
    """Lift a simple root mod p to a root mod p^omega, one power of p per step.

    omega = 1 needs no lifting, so any root mod p (simple or not) is returned as is.
    """
    require_prime(p)
    if omega < 1:
        raise ValueError("omega must be >= 1")
    rho %= p
    if eval_mod(P, rho, p) != 0:
        raise NotARoot(f"{rho} is not a root of {P} mod {p}")
    if omega == 1:
        return rho
    slope = eval_mod(derivative(P), rho, p)
    if slope == 0:
        raise NotSimpleRoot(f"{rho} is a multiple root of {P} mod {p}")
    inv = inverse_mod(slope, p)

    r, pk = rho, p
    for k in range(1, omega):
        # P(r + h p^k) = P(r) + h p^k P'(r)  (mod p^(k+1))
        h = (-(P(r) // pk) * inv) % p
        r += h * pk
        pk *= p
        logger.debug("hensel step %s -> %s: root %s mod %s", k, k + 1, r, pk)

    if settings.self_check and (r % p != rho or P(r) % pk != 0):
        raise RuntimeError(f"Hensel lift of {rho} for {P} mod {p}^{omega} failed: got {r}")
    return r


def lift_factorization(P: IntPoly, p: int, omega: int) -> SplitFactorization:
    """P = prod(x - r_i) mod p^omega, roots ordered like roots_mod_p."""
    if not is_split_simple_mod_p(P, p):
        raise NotSplitSimple(f"{P} is not split with simple roots mod {p}")
    pp = PrimePower.of(p, omega)
    roots = [hensel_lift_root(P, rho, p, omega) for rho in roots_mod_p(P, p)]
    if not (from_roots(roots) - P).reduce_mod(pp.modulus).is_zero():
        raise RuntimeError(f"lifted roots {roots} do not factor {P} mod {pp.modulus}")
    return SplitFactorization(poly=P, pp=pp, roots=roots)


def _trim(c: List[int]) -> List[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem_mod_p(f: List[int], g: List[int], p: int) -> List[int]:
    f = list(f)
    inv = inverse_mod(g[-1], p)
    dg = len(g) - 1
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] * inv % p
        if c:
            for j, gc in enumerate(g):
                f[k - dg + j] = (f[k - dg + j] - c * gc) % p
    return _trim(f[:dg])


def poly_gcd_mod_p(A: IntPoly, B: IntPoly, p: int) -> IntPoly:
    """Monic gcd in GF(p)[x], coefficients in [0, p)."""
    require_prime(p)
    require_monic(A)
    require_monic(B)
    a = _trim([c % p for c in A.coeffs])
    b = _trim([c % p for c in B.coeffs])
    while b:
        a, b = b, _rem_mod_p(a, b, p)
    inv = inverse_mod(a[-1], p)
    return IntPoly.from_coeffs(c * inv % p for c in a)


def check_resmodp(A: IntPoly, B: IntPoly, p: int) -> ResModPReport:
    """deg gcd(A, B mod p) <= nu_p(resultant)."""
    delta = resultant(A, B)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    D = poly_gcd_mod_p(A, B, p)
    deg_D = int(D.degree)
    omega = valuation(delta, p)
    return ResModPReport(p=p, deg_D=deg_D, omega_p=omega, holds=deg_D <= omega)

"""Per-prime gcd patterns, the assembled profile of G(n) = gcd(A(n), B(n)) and the checks built on them.

A pattern for p is the list of p-parts of G(n) over one minimal period p^mu,
anchored at n = 0; G(n) is the product over p | resultant of the pattern
entries at n mod p^mu, for every integer n.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.config import settings, setup_logging
from app.errors import (
    BothZero,
    ModulusMismatch,
    NotCoprime,
    NotSplitSimple,
    PrereqViolated,
    ScanCapExceeded,
    WrongValuation,
)
from app.schemas import (
    CheckResult,
    ConstraintReport,
    Deg1PatternResult,
    DeltaSplitReport,
    ExerciseReport,
    GapReport,
    GcdProfile,
    Pattern,
    SplitFactorization,
)
from app.services.modular import is_split_simple_mod_p, lift_factorization
from app.services.numtheory import inverse_mod, valuation
from app.services.poly import IntPoly, content, cyclotomic_style_gcd
from app.services.sylvester import minimal_delta, resultant, resultant_report

logger = setup_logging("patterns")


def gcd_value(A: IntPoly, B: IntPoly, n: int) -> int:
    a, b = A(n), B(n)
    if a == 0 and b == 0:
        raise BothZero(f"{A} and {B} both vanish at n={n}")
    return math.gcd(a, b)


def p_part(N: int, p: int) -> int:
    """Largest power of p dividing N."""
    if N < 1:
        raise ValueError("expected a positive integer")
    out = 1
    while N % p == 0:
        N //= p
        out *= p
    return out


def _require_scan(size: int, what: str) -> None:
    if size > settings.scan_cap:
        raise ScanCapExceeded(f"{what} needs {size} evaluations, cap is {settings.scan_cap}")


def _minimal_prime_power_period(values: List[int], p: int) -> int:
    m = 0
    while True:
        length = p ** m
        if all(values[i] == values[i % length] for i in range(len(values))):
            return m
        m += 1


def extract_pattern(A: IntPoly, B: IntPoly, p: int, omega_p: int) -> Pattern:
    """Scan n in [0, p^omega_p) and shrink to the minimal period p^mu."""
    if omega_p == 0:
        return Pattern(p=p, mu=0, values=[1])
    full = p ** omega_p
    _require_scan(full, f"pattern for p={p}")
    values = [p_part(gcd_value(A, B, n), p) for n in range(full)]
    mu = _minimal_prime_power_period(values, p)
    logger.debug("pattern for p=%s: period %s^%s out of %s^%s", p, p, mu, p, omega_p)
    return Pattern(p=p, mu=mu, values=values[: p ** mu])


def extract_patterns(A: IntPoly, B: IntPoly, factorization: Dict[int, int]) -> Dict[int, Pattern]:
    """One pattern per prime of the factorization, primes ascending.

    - If settings.concurrency_limit <= 1, extract sequentially.
    - Otherwise spread the primes over a bounded thread pool.
    """
    primes = sorted(factorization)
    concur_limit = max(1, settings.concurrency_limit)
    if concur_limit <= 1 or len(primes) <= 1:
        return {p: extract_pattern(A, B, p, factorization[p]) for p in primes}

    with ThreadPoolExecutor(max_workers=concur_limit) as pool:
        results = list(pool.map(lambda p: extract_pattern(A, B, p, factorization[p]), primes))
    return dict(zip(primes, results))


def value_set_product(patterns: Iterable[Pattern]) -> List[int]:
    out = {1}
    for pat in patterns:
        out = {v * w for v in out for w in pat.value_set()}
    return sorted(out)


def build_profile(A: IntPoly, B: IntPoly, window: Optional[int] = None) -> GcdProfile:
    """Resultant, delta, every pattern, the global period and the value set, self-verified.

    The reconstruction G(n) = prod_p pattern_p(n) is checked on [0, window)
    (one global period by default) and the value set is recomputed by a scan
    of one full period.
    """
    report = resultant_report(A, B)
    if report.delta_signed == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    delta = minimal_delta(A, B).value
    patterns = extract_patterns(A, B, report.factorization)
    global_period = math.lcm(*(pat.length for pat in patterns.values())) if patterns else 1
    values = value_set_product(patterns.values())

    profile = GcdProfile(
        A=A,
        B=B,
        resultant_report=report,
        delta=delta,
        patterns=patterns,
        global_period=global_period,
        value_set=values,
    )

    window = global_period if window is None else window
    span = max(window, global_period)
    _require_scan(span, "profile verification")
    observed = [gcd_value(A, B, n) for n in range(span)]

    checks = [
        CheckResult(
            name="reconstruction",
            holds=all(observed[n] == profile.reconstruct(n) for n in range(window)),
            detail=f"n in [0, {window})",
        ),
        CheckResult(name="period divides resultant", holds=report.delta_abs % global_period == 0),
        CheckResult(
            name="value set matches scan",
            holds=sorted(set(observed[:global_period])) == values,
        ),
        CheckResult(name="values divide delta", holds=all(delta % v == 0 for v in values)),
        CheckResult(name="delta divides resultant", holds=report.delta_abs % delta == 0),
    ]
    for check in checks:
        if not check.holds:
            logger.warning("profile check '%s' failed for (%s, %s)", check.name, A, B)
    logger.info(
        "profile for (%s, %s): resultant %s, delta %s, period %s",
        A, B, report.delta_signed, delta, global_period,
    )
    return profile.model_copy(update={"checks": checks})


def _require_monic_pair(A: IntPoly, B: IntPoly) -> None:
    if not (A.is_monic() and B.is_monic()):
        raise PrereqViolated(f"{A} and {B} must both be monic")


def verify_constraint(A: IntPoly, B: IntPoly, pairs: Sequence[Tuple[int, int]]) -> ConstraintReport:
    """prod q_i divides |resultant| * prod_{i<j} |n_j - n_i| whenever each q_i divides G(n_i)."""
    _require_monic_pair(A, B)
    if len(pairs) > A.degree + B.degree:
        raise PrereqViolated(f"at most {A.degree + B.degree} points allowed, got {len(pairs)}")
    points = [n for n, _ in pairs]
    if len(set(points)) != len(points):
        raise PrereqViolated("evaluation points must be pairwise distinct")
    delta = resultant(A, B)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    for n, q in pairs:
        if q < 1 or gcd_value(A, B, n) % q:
            raise PrereqViolated(f"{q} does not divide G({n}) = {gcd_value(A, B, n)}")

    lhs = math.prod(q for _, q in pairs)
    rhs = abs(delta)
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            rhs *= abs(points[j] - points[i])
    return ConstraintReport(lhs=lhs, rhs=rhs, holds=rhs % lhs == 0)


def valuation_gap_check(A: IntPoly, B: IntPoly, n1: int, n2: int, p: int) -> GapReport:
    """nu_p(n2 - n1) >= nu_p(G(n1)) + nu_p(G(n2)) - nu_p(resultant)."""
    _require_monic_pair(A, B)
    if n1 == n2:
        raise PrereqViolated("n1 and n2 must differ")
    delta = resultant(A, B)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    omega1 = valuation(gcd_value(A, B, n1), p)
    omega2 = valuation(gcd_value(A, B, n2), p)
    omega_delta = valuation(delta, p)
    lhs = valuation(n2 - n1, p)
    rhs = omega1 + omega2 - omega_delta
    return GapReport(
        p=p, omega1=omega1, omega2=omega2, omega_delta=omega_delta, lhs=lhs, rhs=rhs, holds=lhs >= rhs
    )


def validate_valpresone(pat: Pattern, omega_p: int) -> bool:
    """With nu_p(resultant) = 1 the pattern is one p among p - 1 ones."""
    if omega_p != 1:
        raise WrongValuation(f"expected valuation 1, got {omega_p}")
    p = pat.p
    return pat.length == p and pat.values.count(p) == 1 and pat.values.count(1) == p - 1


def rotation_offset(a: Sequence[int], b: Sequence[int]) -> Optional[int]:
    """Smallest k with b == a[k:] + a[:k], or None."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return None
    for k in range(len(a) or 1):
        if a[k:] + a[:k] == b:
            return k
    return None


def deg1_pattern(A: IntPoly, B: IntPoly, p: int) -> Deg1PatternResult:
    """Pattern for a linear A from its root alone: entry n is gcd(n - alpha, p^omega)."""
    delta = resultant(A, B)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    omega = valuation(delta, p)

    reason = None
    if A.degree != 1:
        reason = f"{A} is not of degree 1"
    elif content(A) != 1:
        reason = f"coefficients of {A} are not coprime"
    elif not B.is_monic():
        reason = f"{B} is not monic"
    elif A.leading % p == 0:
        reason = f"leading coefficient of {A} vanishes mod {p}"
    if reason is not None:
        logger.warning("closed form does not apply (%s); extracting the pattern instead", reason)
        return Deg1PatternResult(pattern=extract_pattern(A, B, p, omega), anchor=None, used_fallback=True)

    if omega == 0:
        return Deg1PatternResult(pattern=Pattern(p=p, mu=0, values=[1]), anchor=None)
    modulus = p ** omega
    a0, a1 = A.coeff(0), A.coeff(1)
    alpha = (-a0 * inverse_mod(a1, modulus)) % modulus
    values = [math.gcd(n - alpha, modulus) for n in range(modulus)]
    pattern = Pattern(p=p, mu=omega, values=values)
    if settings.self_check and extract_pattern(A, B, p, omega) != pattern:
        raise RuntimeError(f"closed-form pattern for ({A}, {B}) at p={p} disagrees with extraction")
    return Deg1PatternResult(pattern=pattern, anchor=alpha)


def simpleroots_factorizations(
    A: IntPoly, B: IntPoly, p: int
) -> Tuple[SplitFactorization, SplitFactorization]:
    """Lift A and B to p^max(1, nu_p(delta)), the precision the closed-form gcd needs."""
    omega = max(1, valuation(minimal_delta(A, B).value, p))
    return lift_factorization(A, p, omega), lift_factorization(B, p, omega)


def simpleroots_gcd(fA: SplitFactorization, fB: SplitFactorization, n: int) -> int:
    """G(n) p-part from the lifted roots: gcd(n - r_i, r_i - s_j, p^omega) for the roots in n's class."""
    if fA.pp != fB.pp:
        raise ModulusMismatch(f"moduli differ: {fA.pp.modulus} vs {fB.pp.modulus}")
    p, modulus = fA.pp.p, fA.pp.modulus
    r = next((r for r in fA.roots if (n - r) % p == 0), None)
    s = next((s for s in fB.roots if (n - s) % p == 0), None)
    if r is None or s is None:
        return 1
    return math.gcd(n - r, r - s, modulus)


def _have_common_root(A: IntPoly, B: IntPoly, p: int, k: int) -> bool:
    roots_a = lift_factorization(A, p, k).roots
    roots_b = set(lift_factorization(B, p, k).roots)
    return any(r in roots_b for r in roots_a)


def delta_valuation_split(A: IntPoly, B: IntPoly, p: int) -> DeltaSplitReport:
    """Largest mu with a common root of A and B mod p^mu, against nu_p(delta) and the pattern shape."""
    if not (is_split_simple_mod_p(A, p) and is_split_simple_mod_p(B, p)):
        raise NotSplitSimple(f"{A} and {B} are not both split with simple roots mod {p}")
    delta = resultant(A, B)
    if delta == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    omega = valuation(delta, p)

    mu = 0
    while mu < omega and _have_common_root(A, B, p, mu + 1):
        mu += 1

    nu_p_delta = valuation(minimal_delta(A, B).value, p)
    pattern = extract_pattern(A, B, p, omega)
    pattern_max = max(pattern.values)
    holds = mu == nu_p_delta and pattern.length == p ** mu and pattern_max == p ** mu
    if not holds:
        logger.warning(
            "split valuation mismatch for (%s, %s) at p=%s: mu %s, nu_p(delta) %s, pattern %s",
            A, B, p, mu, nu_p_delta, pattern.values,
        )
    return DeltaSplitReport(
        p=p,
        mu=mu,
        nu_p_delta=nu_p_delta,
        pattern_length=pattern.length,
        pattern_max=pattern_max,
        holds=holds,
    )


def xpow_plus_one_analysis(a: int, b: int) -> ExerciseReport:
    """x^a + 1 against x^b + 1: a common factor x^gcd(a,b) + 1, or the pattern [1, 2] with delta 2."""
    if a < 1 or b < 1:
        raise ValueError("exponents must be positive")
    A = IntPoly.monomial(1, a) + 1
    B = IntPoly.monomial(1, b) + 1
    cyclotomic = cyclotomic_style_gcd(a, b)

    if valuation(a, 2) == valuation(b, 2):
        common = IntPoly.monomial(1, math.gcd(a, b)) + 1
        return ExerciseReport(a=a, b=b, coprime=False, common_factor=common, cyclotomic_gcd=cyclotomic)

    window = settings.exercise_window
    _require_scan(window, "exercise window")
    for n in range(window):
        expected = 2 if n % 2 else 1
        if gcd_value(A, B, n) != expected:
            raise RuntimeError(f"G({n}) for ({A}, {B}) is not {expected}")
    delta = minimal_delta(A, B).value
    return ExerciseReport(
        a=a,
        b=b,
        coprime=True,
        pattern=[1, 2],
        window=window,
        delta=delta,
        ideal_contains_two=delta == 2,
        cyclotomic_gcd=cyclotomic,
    )


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def count_poly_functions(m: int) -> int:
    """Number of maps Z/mZ -> Z/mZ induced by integer polynomials."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return math.prod(m // math.gcd(m, math.factorial(k)) for k in range(m + 1))


def count_gcd_tuples(m: int) -> int:
    """Distinct tuples (gcd(f(0), m), ..., gcd(f(m-1), m)) over the polynomial functions mod m.

    Each function is written once in the falling-factorial basis, the
    coefficient of (x)_k ranging over [0, m / gcd(m, k!)).
    """
    _require_scan(count_poly_functions(m), f"polynomial functions mod {m}")
    ranges = [range(m // math.gcd(m, math.factorial(k))) for k in range(m + 1)]
    basis = [[falling_factorial(n, k) % m for k in range(m + 1)] for n in range(m)]
    seen = set()
    for coeffs in product(*ranges):
        seen.add(tuple(math.gcd(sum(c * f for c, f in zip(coeffs, row)), m) for row in basis))
    return len(seen)


def count_gcd_tuples_mod4() -> int:
    return count_gcd_tuples(4)

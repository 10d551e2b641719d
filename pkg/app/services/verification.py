"""The property suite run by ``gcd-patterns verify`` against a single pair."""
import random
from typing import Callable, List, Optional, Tuple

from app.config import settings, setup_logging
from app.schemas import CheckResult, GcdProfile
from app.services.modular import check_resmodp
from app.services.oracle import brute_g_window, brute_minimal_period
from app.services.patterns import build_profile, gcd_value, validate_valpresone, verify_constraint
from app.services.poly import IntPoly
from app.services.sylvester import delta_report

logger = setup_logging("verification")

Check = Callable[[], Tuple[bool, Optional[str]]]


def _run_check(name: str, check: Check) -> CheckResult:
    try:
        holds, detail = check()
    except Exception as exc:
        logger.exception("check '%s' raised", name)
        return CheckResult(name=name, holds=False, detail=f"{type(exc).__name__}: {exc}")
    return CheckResult(name=name, holds=holds, detail=detail)


def verify_pair(
    A: IntPoly,
    B: IntPoly,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[CheckResult]:
    """Every structural property of G(n) for (A, B), one CheckResult each.

    A failing or raising check never stops the others.
    """
    samples = settings.verify_samples if samples is None else samples
    seed = settings.verify_seed if seed is None else seed
    radius = settings.verify_radius
    monic = A.is_monic() and B.is_monic()

    profile = build_profile(A, B)
    report = profile.resultant_report
    results = list(profile.checks)

    def divides_resultant():
        bad = [n for n in range(-radius, radius + 1) if report.delta_abs % gcd_value(A, B, n)]
        return not bad, f"n in [-{radius}, {radius}]" if not bad else f"fails at n={bad[0]}"

    def divides_delta():
        bad = [n for n in range(-radius, radius + 1) if profile.delta % gcd_value(A, B, n)]
        return not bad, f"delta {profile.delta}" if not bad else f"fails at n={bad[0]}"

    def delta_routes():
        dr = delta_report(A, B)
        return dr.agree, f"content route {dr.value}, lattice route {dr.lattice}"

    def oracle_window():
        return _oracle_agrees(A, B, profile)

    def resmodp():
        if not monic:
            return True, "skipped: not monic"
        reports = [check_resmodp(A, B, p) for p in report.factorization]
        bad = [r.p for r in reports if not r.holds]
        return not bad, f"fails at p={bad}" if bad else f"{len(reports)} primes"

    def valpresone():
        primes = [p for p, omega in report.factorization.items() if omega == 1]
        bad = [p for p in primes if not validate_valpresone(profile.patterns[p], 1)]
        return not bad, f"fails at p={bad}" if bad else f"{len(primes)} primes"

    def sampled_constraints():
        if not monic:
            return True, "skipped: not monic"
        rng = random.Random(seed)
        size = int(A.degree + B.degree)
        for _ in range(samples):
            points = rng.sample(range(-50, 51), rng.randint(1, size))
            pairs = [(n, gcd_value(A, B, n)) for n in points]
            if not verify_constraint(A, B, pairs).holds:
                return False, f"fails for {pairs}"
        return True, f"{samples} tuples, seed {seed}"

    checks = [
        ("G(n) divides resultant", divides_resultant),
        ("G(n) divides delta", divides_delta),
        ("delta routes agree", delta_routes),
        ("oracle window", oracle_window),
        ("gcd mod p degree bound", resmodp),
        ("valuation one shape", valpresone),
        ("sampled lattice constraints", sampled_constraints),
    ]
    results.extend(_run_check(name, fn) for name, fn in checks)
    logger.info("verified (%s, %s): %s/%s checks hold", A, B, sum(r.holds for r in results), len(results))
    return results


def _oracle_agrees(A: IntPoly, B: IntPoly, profile: GcdProfile) -> Tuple[bool, Optional[str]]:
    period = profile.global_period
    delta_abs = profile.resultant_report.delta_abs
    size = 2 * delta_abs
    if size > settings.scan_cap:
        return True, f"skipped: window of {size} over the cap"
    window = brute_g_window(A, B, 0, size)
    if any(window.values[n] != profile.reconstruct(n) for n in range(size)):
        return False, "brute-force window disagrees with the patterns"
    brute_period = brute_minimal_period(window, delta_abs)
    return brute_period == period, f"brute period {brute_period}, pattern period {period}"

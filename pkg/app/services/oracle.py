"""Brute-force reference implementations.

Nothing here reuses the evaluation, gcd, determinant or period logic of the
other services, so agreement between the two is evidence rather than
repetition.
"""
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import List, Optional, Sequence, Tuple

from app.config import settings, setup_logging
from app.errors import BothZero, NotCoprime, PrereqViolated, ScanCapExceeded, WindowTooShort
from app.schemas import EquivalenceMode, SequenceWindow
from app.services.modular import require_prime
from app.services.numtheory import valuation
from app.services.patterns import extract_pattern, rotation_offset
from app.services.poly import IntPoly
from app.services.sylvester import resultant, sylvester_matrix

logger = setup_logging("oracle")

Pair = Tuple[IntPoly, IntPoly]


def naive_eval(P: IntPoly, n: int) -> int:
    return sum(c * n ** k for k, c in enumerate(P.coeffs))


def naive_gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _naive_g(A: IntPoly, B: IntPoly, n: int) -> int:
    g = naive_gcd(naive_eval(A, n), naive_eval(B, n))
    if g == 0:
        raise BothZero(f"{A} and {B} both vanish at n={n}")
    return g


def brute_g_window(A: IntPoly, B: IntPoly, start: int, length: int) -> SequenceWindow:
    if length < 1:
        raise ValueError("window length must be positive")
    return SequenceWindow(start=start, values=[_naive_g(A, B, n) for n in range(start, start + length)])


def brute_minimal_period(window: SequenceWindow, delta_abs: int) -> int:
    """Smallest divisor of |resultant| that is an exact period of the window."""
    values = window.values
    if len(values) < 2 * delta_abs:
        raise WindowTooShort(f"window of {len(values)} values needs at least {2 * delta_abs}")
    for d in range(1, delta_abs + 1):
        if delta_abs % d:
            continue
        if all(values[i] == values[i + d] for i in range(len(values) - d)):
            return d
    return delta_abs


def minors_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Laplace expansion along the first row. Exponential; small matrices only."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j, a in enumerate(matrix[0]):
        if a == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total += (-1) ** j * a * minors_determinant(minor)
    return total


def brute_value_set(A: IntPoly, B: IntPoly) -> List[int]:
    """Distinct G(n) over n in [0, |resultant|), a multiple of the global period."""
    delta_abs = abs(minors_determinant(sylvester_matrix(A, B).entries))
    if delta_abs == 0:
        raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
    if delta_abs > settings.scan_cap:
        raise ScanCapExceeded(f"value-set scan needs {delta_abs} evaluations, cap is {settings.scan_cap}")
    return sorted({_naive_g(A, B, n) for n in range(delta_abs)})


def monic_polys(degree_bound: int, coeff_bound: int) -> List[IntPoly]:
    """Monic polynomials by degree, then by coefficients from the top power down."""
    out = []
    for d in range(1, degree_bound + 1):
        for lower in product(range(-coeff_bound, coeff_bound + 1), repeat=d):
            out.append(IntPoly.from_coeffs(tuple(reversed(lower)) + (1,)))
    return out


def _shape_matches(values: List[int], target: List[int], equiv: EquivalenceMode) -> bool:
    if len(values) != len(target):
        return False
    if equiv == EquivalenceMode.exact:
        return values == target
    if equiv == EquivalenceMode.rotation:
        return rotation_offset(values, target) is not None
    return sorted(values) == sorted(target)


def search_realizing_pair(
    p: int,
    target: Sequence[int],
    equiv: EquivalenceMode = EquivalenceMode.exact,
    degree_bound: int = 2,
    coeff_bound: int = 10,
) -> Optional[Pair]:
    """First monic pair (enumeration order) whose pattern at p has the target shape, or None.

    Candidates are filtered on the p-parts of G(0..L-1), L = len(target); a
    pair is accepted once its extracted pattern has a length dividing L, in
    which case that window is the pattern repeated.
    """
    require_prime(p)
    target = list(target)
    if not target or any(v < 1 or p ** valuation(v, p) != v for v in target):
        raise PrereqViolated(f"target entries must be powers of {p}: {target}")
    equiv = EquivalenceMode(equiv)
    L = len(target)
    polys = monic_polys(degree_bound, coeff_bound)
    values = [[naive_eval(P, n) for n in range(L)] for P in polys]

    def window_shape(i: int, j: int) -> Optional[List[int]]:
        shape = []
        for a, b in zip(values[i], values[j]):
            g = naive_gcd(a, b)
            if g == 0:
                return None
            shape.append(p ** valuation(g, p))
        return shape

    def confirm(A: IntPoly, B: IntPoly) -> bool:
        delta = resultant(A, B)
        if delta == 0:
            return False
        try:
            pattern = extract_pattern(A, B, p, valuation(delta, p))
        except ScanCapExceeded:
            logger.debug("pattern scan for (%s, %s) over the cap, skipped", A, B)
            return False
        return L % pattern.length == 0

    def scan_from(i: int) -> Optional[Pair]:
        for j in range(i + 1, len(polys)):
            shape = window_shape(i, j)
            if shape is None or not _shape_matches(shape, target, equiv):
                continue
            if confirm(polys[i], polys[j]):
                return polys[i], polys[j]
        return None

    concur_limit = max(1, settings.concurrency_limit)
    if concur_limit <= 1:
        for i in range(len(polys)):
            hit = scan_from(i)
            if hit is not None:
                logger.info("pattern %s at p=%s realized by (%s, %s)", target, p, hit[0], hit[1])
                return hit
        return None

    with ThreadPoolExecutor(max_workers=concur_limit) as pool:
        for hit in pool.map(scan_from, range(len(polys))):
            if hit is not None:
                logger.info("pattern %s at p=%s realized by (%s, %s)", target, p, hit[0], hit[1])
                return hit
    return None

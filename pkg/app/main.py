"""Command-line front end: ``gcd-patterns <command> ...``.

Exit status is 0 on success, 1 on domain errors (shared roots, violated
hypotheses, failed checks) and 2 on usage errors (bad syntax, missing options).
"""
import argparse
import sys
from typing import Dict, List, Optional, Sequence

from pydantic import ValidationError

from app.config import settings, setup_logging
from app.errors import GcdPatternError, NotCoprime, PolySyntaxError
from app.schemas import (
    AnalysisReportOut,
    AnalysisRequest,
    CheckOut,
    Command,
    EquivalenceMode,
    FactorOut,
    GcdProfile,
    PatternOut,
)
from app.services.modular import require_prime
from app.services.numtheory import valuation
from app.services.oracle import search_realizing_pair
from app.services.patterns import build_profile, extract_pattern, gcd_value, xpow_plus_one_analysis
from app.services.poly import IntPoly, parse_poly
from app.services.sylvester import bezout_certificate, delta_report, resultant, resultant_report
from app.services.verification import verify_pair

logger = setup_logging("cli")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcd-patterns",
        description="Analyze G(n) = gcd(A(n), B(n)) for integer polynomials A and B.",
    )
    parser.add_argument("--version", action="version", version=f"{settings.project_name} {settings.version}")
    sub = parser.add_subparsers(dest="command", required=True)

    def pair_command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("A", help='first polynomial, e.g. "x^3-5x^2+10x-12"')
        p.add_argument("B", help='second polynomial, e.g. "x^2+3"')
        return p

    p = pair_command("analyze", "full profile: resultant, delta, patterns, period, value set")
    p.add_argument("--json", action="store_true", help="Emit the machine-readable report")
    p.add_argument("--window", type=_positive_int, default=None, help="Reconstruction window (default: one period)")

    pair_command("resultant", "resultant, its factorization and the Bezout certificate")
    pair_command("bezout", "cofactors U, V with A*U + B*V = |resultant|")
    pair_command("delta", "minimal Bezout constant by both routes")

    p = pair_command("pattern", "pattern of p-parts of G(n) for one prime")
    p.add_argument("--prime", type=int, required=True)

    p = pair_command("gvalues", "G(n) for n in an inclusive range")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)

    p = pair_command("verify", "run the property suite")
    p.add_argument("--samples", type=_non_negative_int, default=None, help="Sampled tuples for the lattice constraint")
    p.add_argument("--seed", type=int, default=None, help="Seed for the sampled tuples")

    p = sub.add_parser("search", help="look for monic pairs realizing a pattern")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--pattern", type=_int_list, required=True, help='e.g. "5,1,1,1,1"')
    p.add_argument("--equiv", choices=[m.value for m in EquivalenceMode], default="exact")
    p.add_argument("--deg-bound", dest="deg_bound", type=_positive_int, default=2)
    p.add_argument("--coeff-bound", dest="coeff_bound", type=_non_negative_int, default=10)

    p = sub.add_parser("exercise", help="x^a + 1 against x^b + 1")
    p.add_argument("--a", type=_positive_int, required=True)
    p.add_argument("--b", type=_positive_int, required=True)
    return parser


def request_from_args(args: argparse.Namespace) -> AnalysisRequest:
    options = {k: v for k, v in vars(args).items() if k not in {"command", "A", "B"}}
    return AnalysisRequest(
        command=args.command,
        A_text=getattr(args, "A", None),
        B_text=getattr(args, "B", None),
        options=options,
    )


def to_report_out(profile: GcdProfile) -> AnalysisReportOut:
    report = profile.resultant_report
    return AnalysisReportOut(
        A=str(profile.A),
        B=str(profile.B),
        resultant=str(report.delta_signed),
        delta=str(profile.delta),
        factorization=[FactorOut(p=str(p), omega=w) for p, w in sorted(report.factorization.items())],
        patterns=[
            PatternOut(p=str(p), length=str(pat.length), values=[str(v) for v in pat.values])
            for p, pat in sorted(profile.patterns.items())
        ],
        global_period=str(profile.global_period),
        value_set=[str(v) for v in profile.value_set],
        checks=[CheckOut(name=c.name, holds=c.holds) for c in profile.checks],
    )


def format_factorization(factorization: Dict[int, int]) -> str:
    if not factorization:
        return "1"
    return " * ".join(str(p) if w == 1 else f"{p}^{w}" for p, w in sorted(factorization.items()))


def print_profile(profile: GcdProfile) -> None:
    report = profile.resultant_report
    print("A:", profile.A)
    print("B:", profile.B)
    print("resultant:", report.delta_signed)
    print("factorization:", format_factorization(report.factorization))
    print("delta:", profile.delta)
    for p, pat in sorted(profile.patterns.items()):
        print(f"m_{p} (length {pat.length}):", pat.values)
    print("global period:", profile.global_period)
    print("value set:", profile.value_set)
    for c in profile.checks:
        print(f"[{'PASS' if c.holds else 'FAIL'}] {c.name}")


def _dispatch(command: Command, A: Optional[IntPoly], B: Optional[IntPoly], opts: Dict) -> int:
    if command == Command.analyze:
        profile = build_profile(A, B, window=opts.get("window"))
        if opts.get("json"):
            print(to_report_out(profile).model_dump_json(indent=2))
        else:
            print_profile(profile)
        return 0 if all(c.holds for c in profile.checks) else 1

    if command == Command.resultant:
        report = resultant_report(A, B)
        print("resultant:", report.delta_signed)
        print("|resultant|:", report.delta_abs)
        if report.certificate is None:
            print("A and B share a root; no certificate")
            return 0
        print("factorization:", format_factorization(report.factorization))
        print("U:", report.certificate.U)
        print("V:", report.certificate.V)
        return 0

    if command == Command.bezout:
        cert = bezout_certificate(A, B)
        print("U:", cert.U)
        print("V:", cert.V)
        print("A*U + B*V =", cert.value)
        return 0

    if command == Command.delta:
        report = delta_report(A, B)
        print("resultant:", report.resultant)
        print("delta:", report.value)
        print("U:", report.ayad.U)
        print("V:", report.ayad.V)
        print("lattice delta:", report.lattice)
        print("routes agree:", "yes" if report.agree else "no")
        print("minimality certified:", "yes" if report.certified_minimal else "no (neither polynomial monic)")
        return 0

    if command == Command.pattern:
        p = opts["prime"]
        delta = resultant(A, B)
        if delta == 0:
            raise NotCoprime(f"{A} and {B} share a root (resultant is 0)")
        require_prime(p)
        pat = extract_pattern(A, B, p, valuation(delta, p))
        print(f"m_{p} (length {pat.length}):", pat.values)
        return 0

    if command == Command.gvalues:
        print(" ".join(str(gcd_value(A, B, n)) for n in range(opts["from_"], opts["to"] + 1)))
        return 0

    if command == Command.verify:
        results = verify_pair(A, B, samples=opts.get("samples"), seed=opts.get("seed"))
        for r in results:
            line = f"[{'PASS' if r.holds else 'FAIL'}] {r.name}"
            print(f"{line}: {r.detail}" if r.detail else line)
        return 0 if all(r.holds for r in results) else 1

    if command == Command.search:
        hit = search_realizing_pair(
            opts["prime"],
            opts["pattern"],
            EquivalenceMode(opts.get("equiv", "exact")),
            opts.get("deg_bound", 2),
            opts.get("coeff_bound", 10),
        )
        if hit is None:
            print("no pair found within the bounds")
        else:
            print("A:", hit[0])
            print("B:", hit[1])
        return 0

    report = xpow_plus_one_analysis(opts["a"], opts["b"])
    print(f"A: x^{report.a} + 1")
    print(f"B: x^{report.b} + 1")
    if report.coprime:
        print(f"coprime; pattern {report.pattern} over {report.window} values")
        print("delta:", report.delta, "(2 lies in the ideal)" if report.ideal_contains_two else "")
    else:
        print("not coprime; common factor", report.common_factor)
    print(f"gcd(x^{report.a} - 1, x^{report.b} - 1) =", report.cyclotomic_gcd)
    return 0


def run(request: AnalysisRequest) -> int:
    try:
        A = parse_poly(request.A_text) if request.A_text is not None else None
        B = parse_poly(request.B_text) if request.B_text is not None else None
        return _dispatch(request.command, A, B, request.options)
    except PolySyntaxError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except GcdPatternError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error[E_USAGE]: {exc}", file=sys.stderr)
        return 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        request = request_from_args(args)
    except ValidationError as exc:
        print(f"error[E_USAGE]: {exc.errors()[0]['msg']}", file=sys.stderr)
        return 2
    return run(request)


if __name__ == "__main__":
    sys.exit(main())

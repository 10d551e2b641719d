from enum import Enum
from pydantic import BaseModel, model_validator
from typing import Any, Dict, List, Optional

from sympy import isprime

from app.services.poly import IntPoly


class SylvesterMatrix(BaseModel):
    """(d+e)x(d+e) grid; rows run over the powers x^(d+e-1), ..., x, 1."""
    entries: List[List[int]]
    d: int
    e: int


class BezoutCertificate(BaseModel):
    U: IntPoly
    V: IntPoly
    value: int


class ResultantReport(BaseModel):
    delta_signed: int
    delta_abs: int
    factorization: Dict[int, int]
    certificate: Optional[BezoutCertificate] = None


class DeltaReport(BaseModel):
    resultant: int
    ayad: BezoutCertificate
    lattice: int
    agree: bool
    # True when A or B is monic: the degree-bounded lattice is then the whole ideal meet Z
    certified_minimal: bool

    @property
    def value(self) -> int:
        return self.ayad.value


class PrimePower(BaseModel):
    p: int
    k: int
    modulus: int

    @model_validator(mode="after")
    def _check(self) -> "PrimePower":
        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("exponent must be >= 1")
        if self.modulus != self.p ** self.k:
            raise ValueError(f"modulus {self.modulus} != {self.p}^{self.k}")
        return self

    @classmethod
    def of(cls, p: int, k: int) -> "PrimePower":
        return cls(p=p, k=k, modulus=p ** k)


class SplitFactorization(BaseModel):
    poly: IntPoly
    pp: PrimePower
    roots: List[int]

    @model_validator(mode="after")
    def _check(self) -> "SplitFactorization":
        p = self.pp.p
        if len({r % p for r in self.roots}) != len(self.roots):
            raise ValueError(f"roots {self.roots} are not distinct mod {p}")
        if any(not 0 <= r < self.pp.modulus for r in self.roots):
            raise ValueError(f"roots must be reduced mod {self.pp.modulus}")
        return self


class Pattern(BaseModel):
    p: int
    mu: int
    values: List[int]

    @model_validator(mode="after")
    def _check(self) -> "Pattern":
        if self.p < 2 or self.mu < 0:
            raise ValueError(f"bad pattern parameters p={self.p}, mu={self.mu}")
        if len(self.values) != self.p ** self.mu:
            raise ValueError(f"pattern length {len(self.values)} is not {self.p}^{self.mu}")
        for v in self.values:
            q = v
            while q > 1 and q % self.p == 0:
                q //= self.p
            if v < 1 or q != 1:
                raise ValueError(f"pattern entry {v} is not a power of {self.p}")
        return self

    @property
    def length(self) -> int:
        return len(self.values)

    def at(self, n: int) -> int:
        return self.values[n % len(self.values)]

    def value_set(self) -> List[int]:
        return sorted(set(self.values))


class CheckResult(BaseModel):
    name: str
    holds: bool
    detail: Optional[str] = None


class GcdProfile(BaseModel):
    A: IntPoly
    B: IntPoly
    resultant_report: ResultantReport
    delta: int
    patterns: Dict[int, Pattern]
    global_period: int
    value_set: List[int]
    checks: List[CheckResult] = []

    def reconstruct(self, n: int) -> int:
        out = 1
        for pat in self.patterns.values():
            out *= pat.at(n)
        return out


class SequenceWindow(BaseModel):
    start: int
    values: List[int]

    @model_validator(mode="after")
    def _check(self) -> "SequenceWindow":
        if not self.values:
            raise ValueError("window is empty")
        if any(v < 1 for v in self.values):
            raise ValueError("window values must be >= 1")
        return self


class ConstraintReport(BaseModel):
    lhs: int
    rhs: int
    holds: bool


class GapReport(BaseModel):
    p: int
    omega1: int
    omega2: int
    omega_delta: int
    lhs: int
    rhs: int
    holds: bool


class ResModPReport(BaseModel):
    p: int
    deg_D: int
    omega_p: int
    holds: bool


class DeltaSplitReport(BaseModel):
    p: int
    mu: int
    nu_p_delta: int
    pattern_length: int
    pattern_max: int
    holds: bool


class Deg1PatternResult(BaseModel):
    pattern: Pattern
    anchor: Optional[int] = None
    used_fallback: bool = False


class ExerciseReport(BaseModel):
    a: int
    b: int
    coprime: bool
    common_factor: Optional[IntPoly] = None
    pattern: Optional[List[int]] = None
    window: int = 0
    delta: Optional[int] = None
    ideal_contains_two: Optional[bool] = None
    cyclotomic_gcd: IntPoly


class Command(str, Enum):
    analyze = "analyze"
    resultant = "resultant"
    bezout = "bezout"
    delta = "delta"
    pattern = "pattern"
    gvalues = "gvalues"
    verify = "verify"
    search = "search"
    exercise = "exercise"


class EquivalenceMode(str, Enum):
    exact = "exact"
    rotation = "rotation"
    permutation = "permutation"


PAIR_COMMANDS = {
    Command.analyze, Command.resultant, Command.bezout, Command.delta,
    Command.pattern, Command.gvalues, Command.verify,
}
REQUIRED_OPTIONS: Dict[Command, List[str]] = {
    Command.pattern: ["prime"],
    Command.gvalues: ["from_", "to"],
    Command.search: ["prime", "pattern"],
    Command.exercise: ["a", "b"],
}


class AnalysisRequest(BaseModel):
    command: Command
    A_text: Optional[str] = None
    B_text: Optional[str] = None
    options: Dict[str, Any] = {}

    @model_validator(mode="after")
    def _check_required(self) -> "AnalysisRequest":
        if self.command in PAIR_COMMANDS and (self.A_text is None or self.B_text is None):
            raise ValueError(f"'{self.command.value}' needs two polynomials")
        missing = [o for o in REQUIRED_OPTIONS.get(self.command, []) if self.options.get(o) is None]
        if missing:
            raise ValueError(f"'{self.command.value}' requires options: {', '.join(missing)}")
        return self


# JSON report: every big integer is a decimal string.
class FactorOut(BaseModel):
    p: str
    omega: int


class PatternOut(BaseModel):
    p: str
    length: str
    values: List[str]


class CheckOut(BaseModel):
    name: str
    holds: bool


class AnalysisReportOut(BaseModel):
    A: str
    B: str
    resultant: str
    delta: str
    factorization: List[FactorOut]
    patterns: List[PatternOut]
    global_period: str
    value_set: List[str]
    checks: List[CheckOut]

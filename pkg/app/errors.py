"""Domain errors raised by the services.

Every error carries a stable ``code`` so the CLI (and any caller) can map
failures without parsing messages.
"""
from typing import Optional


class GcdPatternError(Exception):
    code: str = "E_DOMAIN"


class PolySyntaxError(GcdPatternError):
    code = "E_SYNTAX"

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class DegreeTooSmall(GcdPatternError):
    code = "E_DEGREE"


class NotCoprime(GcdPatternError):
    code = "E_NOT_COPRIME"


class FactorizationIncomplete(GcdPatternError):
    code = "E_FACTOR"

    def __init__(self, message: str, cofactor: Optional[int] = None):
        super().__init__(message)
        self.cofactor = cofactor


class NotPrime(GcdPatternError):
    code = "E_NOT_PRIME"


class ZeroModP(GcdPatternError):
    code = "E_ZERO_MOD_P"


class NotMonic(GcdPatternError):
    code = "E_NOT_MONIC"


class NotARoot(GcdPatternError):
    code = "E_NOT_ROOT"


class NotSimpleRoot(GcdPatternError):
    code = "E_NOT_SIMPLE"


class NotSplitSimple(GcdPatternError):
    code = "E_NOT_SPLIT"


class BothZero(GcdPatternError):
    code = "E_BOTH_ZERO"


class PrereqViolated(GcdPatternError):
    code = "E_PREREQ"


class WrongValuation(GcdPatternError):
    code = "E_VALUATION"


class ModulusMismatch(GcdPatternError):
    code = "E_MODULUS"


class WindowTooShort(GcdPatternError):
    code = "E_WINDOW"


class ScanCapExceeded(GcdPatternError):
    code = "E_SCAN_CAP"

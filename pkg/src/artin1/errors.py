"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class Artin1Error(Exception):
    """Base class for all errors raised by artin1."""


class NonPrime(Artin1Error, ValueError):
    pass


class UnsupportedCharacteristic(Artin1Error, ValueError):
    """Raised for p in {2, 3}, where the fibrations used here degenerate."""

    def __init__(self, p: int):
        super().__init__(
            f"characteristic {p} is not supported: the elliptic fibrations "
            "degenerate in characteristics 2 and 3 (explicit models for these "
            "characteristics exist in the literature)"
        )
        self.p = p


class FieldMismatch(Artin1Error, TypeError):
    pass


class DivisionByZero(Artin1Error, ZeroDivisionError):
    pass


class ZeroInput(Artin1Error, ValueError):
    pass


class SingularCurve(Artin1Error, ValueError):
    pass


class ZeroTwist(Artin1Error, ValueError):
    pass


class InternalError(Artin1Error, RuntimeError):
    """A state the mathematics rules out was reached; indicates a bug."""


class NoCubeRoot(Artin1Error, ValueError):
    pass


class ZeroC(Artin1Error, ValueError):
    pass


class InvalidPencil(Artin1Error, ValueError):
    pass


class UnsupportedFiberType(Artin1Error, ValueError):
    pass


class NonMinimalPlace(Artin1Error, ValueError):
    pass


class AuditFailed(Artin1Error, AssertionError):
    pass


class SelftestFailed(Artin1Error, AssertionError):
    pass


class ReportedMismatch(Artin1Error, AssertionError):
    pass


class CrosscheckFailed(Artin1Error, AssertionError):
    pass


class Falsified(Artin1Error, RuntimeError):
    """No candidate model reached Picard number 21; such a model is known to exist, so this is a bug."""

    def __init__(self, p: int, log: list | None = None):
        super().__init__(f"no CERTIFIED_21 model found for p = {p}")
        self.p = p
        self.log = log or []

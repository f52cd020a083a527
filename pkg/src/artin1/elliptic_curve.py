"""Short Weierstrass curves y^2 = x^3 + a x + b over F_p and F_{p^2}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalError, SingularCurve, ZeroTwist
from .finite_field import FieldElement, FiniteField, field_make


def _elt(field: FiniteField, v) -> FieldElement:
    return field.element(v) if not isinstance(v, FieldElement) else field.lift(v)


def cubic_values(field: FiniteField, a: FieldElement, b: FieldElement) -> np.ndarray:
    """Encodings of x^3 + a x + b for every x in the field, in index order."""
    x = field.components()
    x3 = field.vmul(field.vmul(x, x), x)
    v = field.vadd(field.vadd(x3, field.vmul(a.pair, x)), b.pair)
    return field.vindex(v)


def cubic_char_sum(field: FiniteField, a: FieldElement, b: FieldElement) -> int:
    """sum over x in F_q of chi(x^3 + a x + b)."""
    return int(field.chi_indices(cubic_values(field, a, b)).sum(dtype=np.int64))


@dataclass(frozen=True)
class Curve:
    """The curve y^2 = x^3 + a x + b; construct through :func:`curve_make`."""

    field: FiniteField
    a: FieldElement
    b: FieldElement

    @property
    def discriminant(self) -> FieldElement:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def __repr__(self) -> str:
        return f"y^2 = x^3 + {self.a}x + {self.b} over {self.field!r}"

    def base_change(self, field: FiniteField) -> Curve:
        return Curve(field, field.lift(self.a), field.lift(self.b))


def curve_make(field: FiniteField, a, b) -> Curve:
    curve = Curve(field, _elt(field, a), _elt(field, b))
    if not curve.discriminant:
        raise SingularCurve(f"y^2 = x^3 + {curve.a}x + {curve.b} is singular over {field!r}")
    return curve


def point_count(curve: Curve) -> int:
    """Number of projective points, q + 1 + sum_x chi(x^3 + a x + b)."""
    return curve.field.q + 1 + cubic_char_sum(curve.field, curve.a, curve.b)


def trace(curve: Curve) -> int:
    return curve.field.q + 1 - point_count(curve)


def trace_lift(a1: int, p: int, k: int) -> int:
    """Trace of Frobenius over F_{p^k} from the trace a1 over F_p."""
    if k == 1:
        return a1
    if k == 2:
        return a1 * a1 - 2 * p
    raise ValueError("only k in {1, 2} is supported")


def j_invariant(curve: Curve) -> FieldElement:
    a3 = 4 * curve.a**3
    return 1728 * a3 / (a3 + 27 * curve.b**2)


def _j_family(field: FiniteField, j: int) -> Curve:
    s = field(j) / (1728 - field(j))
    return curve_make(field, 3 * s, 2 * s)


def supersingular_j_invariants(p: int) -> list[int]:
    """All j in F_p whose curves have trace 0 (the F_p-rational supersingular j)."""
    F = field_make(p)
    found = []
    for j in range(p):
        if j == 0:
            E = curve_make(F, 0, 1)
        elif j == 1728 % p:
            E = curve_make(F, 1, 0)
        else:
            E = _j_family(F, j)
        if trace(E) == 0:
            found.append(j)
    return found


def curve_with_j(p: int, j: int) -> Curve:
    F = field_make(p)
    if j % p == 0:
        return curve_make(F, 0, 1)
    if j % p == 1728 % p:
        return curve_make(F, -1, 0)
    return _j_family(F, j)


def find_supersingular(p: int) -> Curve:
    """A curve over F_p with exactly p + 1 points.

    y^2 = x^3 + 1 when p = 2 mod 3, y^2 = x^3 - x when p = 3 mod 4, otherwise
    the first j in F_p (scanning upward) whose model y^2 = x^3 + 3sx + 2s,
    s = j/(1728 - j), has trace zero.
    """
    F = field_make(p)
    if p % 3 == 2:
        return curve_make(F, 0, 1)
    if p % 4 == 3:
        return curve_make(F, -1, 0)
    for j in range(1, p):
        if j == 1728 % p:
            continue
        E = _j_family(F, j)
        if trace(E) == 0:
            return E
    raise InternalError(f"no supersingular j-invariant found in F_{p}")


def quadratic_twist(curve: Curve, d) -> Curve:
    d = _elt(curve.field, d)
    if not d:
        raise ZeroTwist("twist parameter must be nonzero")
    return curve_make(curve.field, curve.a * d * d, curve.b * d**3)


def two_torsion_roots(curve: Curve) -> list[FieldElement]:
    """Roots of x^3 + a x + b in the base field, sorted by encoding."""
    F = curve.field
    zeros = np.flatnonzero(cubic_values(F, curve.a, curve.b) == 0)
    return [F.from_index(int(i)) for i in zeros]

"""Elliptic fibrations over the t-line: the Kummer model and the Inose pencil.

A pencil is a Weierstrass family y^2 = x^3 + A4(t) x + A6(t) with
coefficients in F_p.  For a K3 surface deg A4 <= 8 and deg A6 <= 12 (weights
4*chi and 6*chi with Euler characteristic chi = 2); the rational test
surface in :mod:`artin1.counting` uses chi = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from . import polynomial as poly
from .elliptic_curve import Curve, j_invariant
from .errors import FieldMismatch, InvalidPencil, NoCubeRoot, ZeroC, ZeroTwist
from .finite_field import FieldElement, FiniteField, cube_root, primitive_root, smallest_nonresidue
from .polynomial import Poly


@dataclass(frozen=True)
class Provenance:
    """Where a pencil came from; carried into certificates verbatim."""

    kind: str  # "inose", "kummer-pi0" or "test"
    curve_a: int | None = None
    curve_b: int | None = None
    j: int | None = None
    B_sign: int | None = None
    c: int | None = None
    twist_d: int = 1


@dataclass(frozen=True)
class Pencil:
    field: FiniteField
    a4: Poly
    a6: Poly
    provenance: Provenance = dc_field(default=Provenance("test"), compare=False)
    euler_char: int = 2

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def weights(self) -> tuple[int, int]:
        return 4 * self.euler_char, 6 * self.euler_char

    def chart_at_infinity(self) -> tuple[Poly, Poly]:
        """(s^8 A4(1/s), s^12 A6(1/s)) for K3 weights."""
        w4, w6 = self.weights
        return poly.chart_at_infinity(self.a4, w4, self.p), poly.chart_at_infinity(self.a6, w6, self.p)

    def key(self) -> tuple[Poly, Poly]:
        return self.a4, self.a6

    def __repr__(self) -> str:
        return f"y^2 = x^3 + ({poly.to_string(self.a4)}) x + ({poly.to_string(self.a6)}) over F_{self.p}"


def pencil_make(field: FiniteField, a4, a6, provenance: Provenance | None = None, euler_char: int = 2) -> Pencil:
    """Validate and build a pencil.

    Raises:
        InvalidPencil: degrees outside the weight range, identically singular
            generic fibre, or a non-minimal model at t = 0 or t = infinity.
    """
    if field.degree != 1:
        raise FieldMismatch("pencils are defined over the prime field")
    p = field.p
    P = Pencil(field, poly.trim(a4, p), poly.trim(a6, p), provenance or Provenance("test"), euler_char)
    w4, w6 = P.weights
    if poly.degree(P.a4) > w4 or poly.degree(P.a6) > w6:
        raise InvalidPencil(f"degrees ({poly.degree(P.a4)}, {poly.degree(P.a6)}) exceed ({w4}, {w6})")
    if not discriminant(P):
        raise InvalidPencil("generic fibre is singular")
    zero = field.zero
    for f4, f6, where in ((P.a4, P.a6, "t = 0"), (*P.chart_at_infinity(), "t = infinity")):
        if poly.valuation(f4, zero)[0] >= 4 and poly.valuation(f6, zero)[0] >= 6:
            raise InvalidPencil(f"model is not minimal at {where}")
    return P


def discriminant(P: Pencil) -> Poly:
    """-16 (4 A4^3 + 27 A6^2)."""
    p = P.p
    inner = poly.add(poly.scale(poly.power(P.a4, 3, p), 4, p), poly.scale(poly.power(P.a6, 2, p), 27, p), p)
    return poly.scale(inner, -16, p)


@dataclass(frozen=True)
class KummerModel:
    """f(t) y^2 = g(x) for the cubics f of E and g of E'."""

    field: FiniteField
    f: Poly
    g: Poly

    def pencil(self) -> Pencil:
        """Weierstrass form Y^2 = X^3 + a' f^2 X + b' f^3 with g = x^3 + a' x + b'."""
        p = self.field.p
        g = self.g + (0,) * (4 - len(self.g))
        a4 = poly.scale(poly.power(self.f, 2, p), g[1], p)
        a6 = poly.scale(poly.power(self.f, 3, p), g[0], p)
        return pencil_make(self.field, a4, a6, Provenance("kummer-pi0"))


def _cubic(E: Curve) -> Poly:
    return poly.trim((int(E.b), int(E.a), 0, 1), E.field.p)


def kummer_model(E: Curve, E2: Curve) -> KummerModel:
    if E.field != E2.field:
        raise FieldMismatch("both curves must live over the same field")
    return KummerModel(E.field, _cubic(E), _cubic(E2))


def inose_pencil(E: Curve, B_sign: int, c) -> Pencil:
    """y^2 = x^3 - 3A t^4 x + c t^5 (t^2 - 2B t + 1) for E x E.

    J = j(E)/1728, B = B_sign (1 - J) and A is a cube root of J^2 c^2
    (A = 0 when J = 0).  The fibres at t = 0 and t = infinity are II*.

    Raises:
        ZeroC: c == 0.
        NoCubeRoot: J^2 c^2 is not a cube in F_p.
    """
    F = E.field
    c = F.element(c) if not isinstance(c, FieldElement) else c
    if not c:
        raise ZeroC("c must be nonzero")
    if B_sign not in (1, -1):
        raise ValueError("B_sign must be +1 or -1")
    J = j_invariant(E) / 1728
    B = B_sign * (1 - J)
    if J:
        A = cube_root(J * J * c * c)
        if A is None:
            raise NoCubeRoot(f"J^2 c^2 = {J * J * c * c} is not a cube in F_{F.p}")
    else:
        A = F.zero
    a4 = (0, 0, 0, 0, int(-3 * A))
    a6 = (0, 0, 0, 0, 0, int(c), int(-2 * B * c), int(c))
    prov = Provenance("inose", int(E.a), int(E.b), int(j_invariant(E)), B_sign, int(c), 1)
    return pencil_make(F, a4, a6, prov)


def pencil_twist(P: Pencil, d) -> Pencil:
    """Quadratic twist (A4, A6) -> (d^2 A4, d^3 A6)."""
    d = int(d) % P.p
    if d == 0:
        raise ZeroTwist("twist parameter must be nonzero")
    p = P.p
    prov = P.provenance
    prov = Provenance(prov.kind, prov.curve_a, prov.curve_b, prov.j, prov.B_sign, prov.c, prov.twist_d * d % p)
    return pencil_make(P.field, poly.scale(P.a4, d * d, p), poly.scale(P.a6, d**3, p), prov, P.euler_char)


def sextic_class_representatives(p: int) -> list[int]:
    """Powers g^0, ..., g^(m-1) of the smallest generator, m = gcd(6, p - 1)."""
    g = primitive_root(p)
    return [pow(g, i, p) for i in range(math.gcd(6, p - 1))]


def candidate_models(E: Curve) -> list[Pencil]:
    """The finite twist family searched for a Picard-number-21 model.

    Ordered by B_sign (+1 first), then c over the sextic classes, then the
    quadratic twist d in (1, smallest nonresidue), so twist partners are
    adjacent.  Pairs without a cube root are skipped, duplicates dropped.
    For j = 0 only B_sign = +1 is used: t -> -t turns B_sign = -1 with c into
    B_sign = +1 with -c, and -c is another sextic class times a sixth power.
    """
    p = E.field.p
    n = smallest_nonresidue(p)
    signs = (1,) if not j_invariant(E) else (1, -1)
    seen, out = set(), []
    for B_sign in signs:
        for c in sextic_class_representatives(p):
            try:
                base = inose_pencil(E, B_sign, c)
            except NoCubeRoot:
                continue
            for d in (1, n):
                P = base if d == 1 else pencil_twist(base, d)
                if P.key() not in seen:
                    seen.add(P.key())
                    out.append(P)
    return out


def fiber_equation_at(P: Pencil, place: FieldElement | str):
    """Fibre coefficients (a, b) at a finite place, or the chart polynomials at infinity."""
    if isinstance(place, str):
        if place not in ("inf", "infinity"):
            raise ValueError(f"unknown place {place!r}")
        return P.chart_at_infinity()
    return poly.evaluate(P.a4, place), poly.evaluate(P.a6, place)


def iter_places(field: FiniteField) -> Iterator[FieldElement | str]:
    """Points of P^1 over the field: every element, then infinity."""
    yield from field.elements()
    yield "inf"

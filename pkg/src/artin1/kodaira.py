"""Singular fibres of a pencil from valuations of (A4, A6, Delta).

Residue characteristic is at least 5, so the Kodaira type is read off the
triple (v(A4), v(A6), v(Delta)) directly.  Only the types that the Kummer
and Inose fibrations produce are supported; anything else is a bug upstream
and raises :class:`UnsupportedFiberType`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polynomial as poly
from .errors import AuditFailed, NonMinimalPlace, UnsupportedFiberType
from .finite_field import FieldElement, FiniteField, field_make
from .pencil import Pencil, discriminant
from .polynomial import Poly

EULER = {"I0": 0, "I1": 1, "I2": 2, "II": 2, "IV": 4, "I0*": 6, "II*": 10}


@dataclass(frozen=True)
class PlaceOfP1:
    kind: str  # "finite" or "infinity"
    root: FieldElement | None = None
    degree: int = 1
    minpoly: Poly = ()

    def label(self) -> str:
        if self.kind == "infinity":
            return "inf"
        if self.degree == 1:
            return str(int(self.root))
        return poly.to_string(self.minpoly)


@dataclass(frozen=True)
class FiberDatum:
    """One singular fibre, with arithmetic data over its residue field.

    ``residue_q`` is the size of the field the split / leaf / IV data were
    computed in; ``points`` is the number of geometric
    fibres the entry stands for (2 for a degree-2 closed point listed once).
    """

    place: PlaceOfP1
    kodaira_class: str
    euler: int
    residue_q: int = 0
    points: int = 1
    split: bool | None = None
    rational_leaves: int | None = None
    iv_all_rational: bool | None = None


def discriminant_poly(P: Pencil) -> tuple[Poly, int]:
    """Delta(t) and its order of vanishing at infinity, 12*chi - deg Delta."""
    delta = discriminant(P)
    return delta, 12 * P.euler_char - poly.degree(delta)


def _count_cubic_roots(K: FiniteField, a: FieldElement, b: FieldElement) -> int:
    from .elliptic_curve import cubic_values

    return int(np.count_nonzero(cubic_values(K, a, b) == 0))


def classify_at(a4: Poly, a6: Poly, delta: Poly, z: FieldElement, place: PlaceOfP1, points: int = 1) -> FiberDatum:
    """Kodaira type and arithmetic data of the fibre at t = z (z in the residue field)."""
    K = z.field
    m, _ = poly.valuation(delta, z)
    k4, r4 = poly.valuation(a4, z)
    k6, r6 = poly.valuation(a6, z)

    def datum(kind: str, **extra) -> FiberDatum:
        return FiberDatum(place, kind, EULER[kind], K.q, points, **extra)

    if m == 0:
        return datum("I0")
    if k4 >= 4 and k6 >= 6:
        raise NonMinimalPlace(f"non-minimal Weierstrass model at {place.label()}")
    if k4 == 0:
        if m > 2:
            raise UnsupportedFiberType(f"I{m} at {place.label()}")
        # node at x0 = -3b/(2a), other root x1 = 3b/a; split iff x0 - x1 = -9b/(2a) is a square
        return datum(f"I{m}", split=K.chi(-2 * r4 * r6) == 1)
    if k6 == 1:
        return datum("II")
    if k4 >= 2 and k6 == 2:
        return datum("IV", iv_all_rational=K.chi(r6) == 1)
    if k4 >= 2 and k6 >= 3 and m == 6:
        a = r4 if k4 == 2 else K.zero
        b = r6 if k6 == 3 else K.zero
        return datum("I0*", rational_leaves=1 + _count_cubic_roots(K, a, b))
    if k4 >= 4 and k6 == 5:
        return datum("II*")
    raise UnsupportedFiberType(f"(v(A4), v(A6), v(Delta)) = ({k4}, {k6}, {m}) at {place.label()}")


def delta_roots(P: Pencil) -> list[FieldElement]:
    """Roots of Delta in F_{p^2}, by exhaustive evaluation, sorted by encoding."""
    F2 = field_make(P.p, 2)
    delta = discriminant(P)
    c0, c1 = poly.evaluate_all(delta, F2)
    return [F2.from_index(int(i)) for i in np.flatnonzero((c0 == 0) & (c1 == 0))]


def classify_fibers(P: Pencil, k: int = 1) -> list[FiberDatum]:
    """Singular fibres of the pencil.

    With ``k = 1`` every closed point of degree <= 2 is listed once, its data
    computed over its own residue field.  With ``k = 2`` every F_{p^2}-point
    is listed separately with data over F_{p^2}; this is the view the counter
    uses for #X(F_{p^2}).  Infinity comes last.
    """
    p = P.p
    F1, F2 = field_make(p, 1), field_make(p, 2)
    delta = discriminant(P)
    out: list[FiberDatum] = []
    done: set[int] = set()
    for r in delta_roots(P):
        if r.index in done:
            continue
        if r.in_base_field():
            place = PlaceOfP1("finite", F1.lift(r), 1, ((-int(r)) % p, 1))
            z = r if k == 2 else F1.lift(r)
            out.append(classify_at(P.a4, P.a6, delta, z, place))
            done.add(r.index)
            continue
        rbar = r.conjugate()
        s, n = r + rbar, r * rbar
        place = PlaceOfP1("finite", r, 2, (int(n), int(-s), 1))
        if k == 2:
            out.append(classify_at(P.a4, P.a6, delta, r, place))
            done.add(r.index)
        else:
            out.append(classify_at(P.a4, P.a6, delta, r, place, points=2))
            done.update((r.index, rbar.index))
    c4, c6 = P.chart_at_infinity()
    cdelta = poly.scale(poly.add(poly.scale(poly.power(c4, 3, p), 4, p), poly.scale(poly.power(c6, 2, p), 27, p), p), -16, p)
    K = F2 if k == 2 else F1
    fiber = classify_at(c4, c6, cdelta, K.zero, PlaceOfP1("infinity"))
    if fiber.kodaira_class != "I0":
        out.append(fiber)
    return out


def fiber_point_count(F: FiberDatum, q: int | None = None) -> int:
    """Points on the fibre of the smooth minimal model over its residue field F_q."""
    q = F.residue_q if q is None else q
    if q != F.residue_q:
        raise ValueError(f"fibre data were computed over F_{F.residue_q}, not F_{q}")
    kind = F.kodaira_class
    if kind == "I1":
        return q if F.split else q + 2
    if kind == "I2":
        return 2 * q if F.split else 2 * q + 2
    if kind == "II":
        return q + 1
    if kind == "IV":
        return 3 * q + 1 if F.iv_all_rational else q + 1
    if kind == "I0*":
        return q + 1 + F.rational_leaves * q
    if kind == "II*":
        return 9 * q + 1
    raise UnsupportedFiberType(f"no point-count rule for {kind}")


def euler_audit(fibers: list[FiberDatum], expected: int = 24) -> None:
    """Raise AuditFailed unless the fibre Euler numbers sum to ``expected``."""
    total = sum(f.euler * f.points for f in fibers)
    if total != expected:
        raise AuditFailed(f"fibre Euler numbers sum to {total}, expected {expected}")


def inventory(fibers: list[FiberDatum]) -> dict[tuple, str]:
    """(place kind, root encoding) -> Kodaira class, for place-by-place comparisons."""
    return {(f.place.kind, f.place.root.index if f.place.root is not None else None): f.kodaira_class
            for f in fibers}

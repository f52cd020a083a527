from __future__ import annotations

import pytest

from artin1 import polynomial as poly
from artin1.certify import generic_supersingular_curve
from artin1.counting import surface_count
from artin1.elliptic_curve import curve_make, find_supersingular, j_invariant, point_count, quadratic_twist
from artin1.errors import FieldMismatch, InvalidPencil, NoCubeRoot, ZeroC, ZeroTwist
from artin1.finite_field import field_make, is_prime, smallest_nonresidue
from artin1.pencil import (
    Provenance,
    candidate_models,
    discriminant,
    fiber_equation_at,
    inose_pencil,
    iter_places,
    kummer_model,
    pencil_make,
    pencil_twist,
    sextic_class_representatives,
)

PRIMES = [p for p in range(5, 50) if is_prime(p)]


def test_kummer_model_example():
    F = field_make(7)
    E = curve_make(F, -1, 0)
    K = kummer_model(E, E)
    assert K.f == K.g == (0, 6, 0, 1)


def test_kummer_model_field_mismatch():
    with pytest.raises(FieldMismatch):
        kummer_model(curve_make(field_make(7), -1, 0), curve_make(field_make(11), -1, 0))


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_kummer_good_fibres_are_twists(p):
    F = field_make(p)
    E = find_supersingular(p)
    E2 = next(curve_make(F, 1, b) for b in range(1, p) if (4 + 27 * b * b) % p)
    K = kummer_model(E, E2)
    P = K.pencil()
    aE2 = p + 1 - point_count(E2)
    for t in range(p):
        ft = poly.evaluate(K.f, F(t))
        if not ft:
            continue
        a, b = fiber_equation_at(P, F(t))
        fibre = curve_make(F, a, b)
        assert p + 1 - point_count(fibre) == F.chi(ft) * aE2
        assert point_count(fibre) == point_count(quadratic_twist(E2, ft))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_kummer_supersingular_good_fibres_have_p_plus_1_points(p):
    E = find_supersingular(p)
    K = kummer_model(E, E)
    P = K.pencil()
    F = E.field
    for t in range(p):
        if poly.evaluate(K.f, F(t)):
            assert point_count(curve_make(F, *fiber_equation_at(P, F(t)))) == p + 1


def test_inose_j0_example():
    E = curve_make(field_make(5), 0, 1)
    P = inose_pencil(E, 1, 1)
    assert P.a4 == ()
    assert P.a6 == poly.trim((0, 0, 0, 0, 0, 1, -2, 1), 5)
    assert P.provenance.kind == "inose" and P.provenance.j == 0


def test_inose_j1728_example():
    F = field_make(7)
    E = curve_make(F, -1, 0)
    P = inose_pencil(E, 1, 1)
    assert P.a4 == (0, 0, 0, 0, 4)
    assert P.a6 == (0, 0, 0, 0, 0, 1, 0, 1)
    assert fiber_equation_at(P, F(1)) == (F(-3), F(2))
    delta = discriminant(P)
    expected = poly.scale(poly.mul((0,) * 10 + (1,), poly.power((-1, 0, 1), 2, 7), 7), -432 * 1, 7)
    assert delta == expected


def test_inose_at_13_generic_j():
    E = find_supersingular(13)
    F = E.field
    J = j_invariant(E) / 12
    assert J not in (0, 1)
    found = 0
    for c in range(1, 13):
        try:
            P = inose_pencil(E, 1, c)
        except NoCubeRoot:
            continue
        found += 1
        A = -poly.evaluate(P.a4, F(1)) / 3
        assert A**3 == J * J * c * c
        assert poly.evaluate(P.a6, F(1)) == c * (2 - 2 * (1 - J))
    assert found > 0


def test_inose_errors():
    E = curve_make(field_make(7), -1, 0)
    with pytest.raises(ZeroC):
        inose_pencil(E, 1, 0)
    E13 = find_supersingular(13)
    failures = 0
    for c in range(1, 13):
        try:
            inose_pencil(E13, 1, c)
        except NoCubeRoot:
            failures += 1
    assert failures > 0


def _generic_discriminant(P, p):
    F = field_make(p)
    A = -poly.evaluate(P.a4, F(1)) / 3
    prov = P.provenance
    c = prov.c * prov.twist_d**3 % p
    J = j_invariant(curve_make(F, prov.curve_a, prov.curve_b)) / 1728
    B = prov.B_sign * (1 - J)
    quad = poly.trim((1, int(-2 * B), 1), p)
    inner = poly.add(poly.scale(poly.power(quad, 2, p), c * c, p), poly.trim((0, 0, int(-4 * A**3)), p), p)
    return poly.scale(poly.mul((0,) * 10 + (1,), inner, p), -432, p)


@pytest.mark.parametrize("p", PRIMES)
def test_candidate_invariants(p):
    E = find_supersingular(p)
    models = candidate_models(E)
    assert 0 < len(models) <= 12
    assert len({P.key() for P in models}) == len(models)
    zero = field_make(p).zero
    for P in models:
        assert poly.degree(P.a4) <= 8 and poly.degree(P.a6) <= 12
        for a4, a6 in ((P.a4, P.a6), P.chart_at_infinity()):
            assert poly.valuation(a4, zero)[0] >= 4
            assert poly.valuation(a6, zero)[0] == 5
        J = j_invariant(E) / 1728
        if J not in (0, 1):
            assert discriminant(P) == _generic_discriminant(P, p)


@pytest.mark.parametrize("p", [13, 17, 19, 29, 37, 41, 43])
def test_generic_quartic_has_double_root_at_one(p):
    E = generic_supersingular_curve(p)
    if E is None:
        pytest.skip(f"no supersingular j outside {{0, 1728}} in F_{p}")
    F = E.field
    for P in candidate_models(E):
        if P.provenance.B_sign != 1:
            continue
        quartic = tuple(discriminant(P)[10:])
        assert poly.degree(quartic) == 4
        assert poly.valuation(quartic, F(1))[0] == 2
        simple = [t for t in range(p) if t != 1 and not poly.evaluate(quartic, F(t))]
        assert len(simple) in (0, 2)
        for t in simple:
            assert poly.valuation(quartic, F(t))[0] == 1


def test_candidate_examples():
    E5 = curve_make(field_make(5), 0, 1)
    assert sextic_class_representatives(5) == [1, 2]
    assert len(candidate_models(E5)) <= 4
    E7 = curve_make(field_make(7), -1, 0)
    models = candidate_models(E7)
    assert models
    assert all(P.provenance.j == 1728 % 7 for P in models)
    assert len({P.key() for P in models}) == len(models)


def test_candidate_order_puts_twist_partners_next_to_each_other():
    E = find_supersingular(13)
    n = smallest_nonresidue(13)
    models = candidate_models(E)
    for first, second in zip(models[::2], models[1::2]):
        assert (first.provenance.B_sign, first.provenance.c) == (second.provenance.B_sign, second.provenance.c)
        assert (first.provenance.twist_d, second.provenance.twist_d) == (1, n)


def test_pencil_twist_examples():
    P = inose_pencil(curve_make(field_make(5), 0, 1), 1, 1)
    T = pencil_twist(P, 2)
    assert T.a4 == ()
    assert T.a6 == poly.scale(P.a6, 8, 5)
    assert T.provenance.twist_d == 2
    with pytest.raises(ZeroTwist):
        pencil_twist(P, 0)
    with pytest.raises(ZeroTwist):
        pencil_twist(P, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_double_twist_by_nonsquare_keeps_counts(p):
    E = find_supersingular(p)
    n = smallest_nonresidue(p)
    P = candidate_models(E)[0]
    TT = pencil_twist(pencil_twist(P, n), n)
    assert surface_count(TT, 1) == surface_count(P, 1)
    assert surface_count(TT, 2) == surface_count(P, 2)


def test_infinity_chart_generic():
    E = find_supersingular(13)
    P = candidate_models(E)[0]
    F = E.field
    A = -poly.evaluate(P.a4, F(1)) / 3
    prov = P.provenance
    J = j_invariant(E) / 12
    B = prov.B_sign * (1 - J)
    c = prov.c
    c4, c6 = fiber_equation_at(P, "inf")
    assert c4 == poly.trim((0, 0, 0, 0, int(-3 * A)), 13)
    assert c6 == poly.trim((0, 0, 0, 0, 0, c, int(-2 * B * c), c), 13)
    with pytest.raises(ValueError):
        fiber_equation_at(P, "zero")


def test_pencil_make_validation():
    F = field_make(7)
    with pytest.raises(InvalidPencil):
        pencil_make(F, (0,) * 9 + (1,), (1,))
    with pytest.raises(InvalidPencil):
        pencil_make(F, (), ())
    with pytest.raises(InvalidPencil):
        pencil_make(F, (0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0, 1, 1))
    with pytest.raises(InvalidPencil):
        pencil_make(F, (0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 1))  # non-minimal at infinity
    with pytest.raises(FieldMismatch):
        pencil_make(field_make(7, 2), (), (0, 1))
    P = pencil_make(F, (), (0, 1), Provenance("test"), euler_char=1)
    assert P.weights == (4, 6)


def test_iter_places():
    places = list(iter_places(field_make(5)))
    assert len(places) == 6 and places[-1] == "inf"
    assert [int(z) for z in places[:-1]] == list(range(5))

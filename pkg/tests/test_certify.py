from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

import artin1.certify as certify
import artin1.counting as counting
from artin1.cache import CertificateCache, cache_key
from artin1.certify import (
    Certificate,
    certificate_from_counts,
    certify_model,
    eigen_multiplicities,
    expected_kummer_counts,
    generic_supersingular_curve,
    inert_check,
    lemma_crosscheck,
    prove_theorem1,
    sweep,
    twist_pairs,
    verify_kummer_ranks,
)
from artin1.elliptic_curve import j_invariant
from artin1.errors import CrosscheckFailed, Falsified, NonPrime, ReportedMismatch, UnsupportedCharacteristic
from artin1.finite_field import is_prime
from artin1.pencil import candidate_models

PRIMES = [p for p in range(5, 48) if is_prime(p)]


def n1(p, a):
    return 1 + (2 * a - 22) * p + p * p


def n2(p):
    return 1 + 22 * p * p + p**4


def test_eigen_examples():
    assert eigen_multiplicities(7, n1(7, 21), n2(7)) == (21, 1, "CERTIFIED_21")
    assert eigen_multiplicities(7, n1(7, 20), n2(7)) == (20, 2, "CERTIFIED_OTHER(20)")
    assert eigen_multiplicities(7, n1(7, 21) + 1, n2(7))[2] == "INCONSISTENT"
    assert eigen_multiplicities(7, n1(7, 21), n2(7) + 7)[2] == "INCONSISTENT"
    assert eigen_multiplicities(7, 1 + 49 + 23 * 7 * 7, n2(7))[2] == "INCONSISTENT"
    assert eigen_multiplicities(7, n1(7, 21), None) == (21, 1, "UNCHECKED_Q2(21)")


@given(st.sampled_from(PRIMES), st.integers(0, 22))
def test_multiplicities_solve_the_trace(p, a):
    plus, minus, verdict = eigen_multiplicities(p, n1(p, a), n2(p))
    assert (plus, minus) == (a, 22 - a)
    assert plus - minus == (n1(p, a) - 1 - p * p) // p
    assert verdict == ("CERTIFIED_21" if a == 21 else f"CERTIFIED_OTHER({a})")


@given(st.sampled_from(PRIMES), st.integers(-30 * 50, 30 * 50))
def test_parity_and_range_checks(p, t1):
    plus, minus, verdict = eigen_multiplicities(p, 1 + t1 + p * p, n2(p))
    if verdict == "INCONSISTENT":
        assert t1 % p or abs(t1) > 22 * p or (22 + t1 // p) % 2
    else:
        assert plus + minus == 22 and plus >= 0 and minus >= 0


def test_prove_p5():
    res = prove_theorem1(5)
    c = res.certificate
    assert (c.N1, c.N2, c.verdict) == (126, 1176, "CERTIFIED_21")
    assert c.provenance.j == 0 and c.provenance.c in (1, 2)
    assert c.rho_fp == 21 and c.rho_fp2 == 22 and c.artin_invariant == "1 (cited)"


def test_prove_p11():
    c = prove_theorem1(11).certificate
    assert (c.N1, c.N2) == (342, 17304)
    assert c.provenance.j in (0, 1728 % 11)


def test_prove_p13_uses_generic_j():
    res = prove_theorem1(13)
    assert int(j_invariant(res.curve)) not in (0, 1728 % 13)
    assert res.certificate.N1 == n1(13, 21)
    assert {f.type for f in res.certificate.fibers} >= {"II*", "I2"}


@pytest.mark.parametrize("p", [2, 3])
def test_prove_small_characteristic(p):
    with pytest.raises(UnsupportedCharacteristic):
        prove_theorem1(p)


def test_prove_composite():
    with pytest.raises(NonPrime):
        prove_theorem1(15)


def test_falsified_carries_log(monkeypatch):
    monkeypatch.setattr(certify, "surface_count", lambda P, k, workers=1: 0)
    with pytest.raises(Falsified) as info:
        prove_theorem1(7)
    assert info.value.p == 7
    assert info.value.log and all(r.verdict == "INCONSISTENT" for r in info.value.log)


@pytest.mark.parametrize("p", [p for p in PRIMES if p >= 13])
def test_generic_twist_pair_signature(p):
    E = generic_supersingular_curve(p)
    if E is None:
        pytest.skip("no supersingular j outside {0, 1728}")
    log = prove_theorem1(p, all_candidates=True, curve=E).log
    pairs = {frozenset((a.N1, b.N1)) for a, b in twist_pairs(log)}
    assert frozenset((n1(p, 20), n1(p, 21))) in pairs
    for r in log:
        assert r.N2 == n2(p)
        assert r.verdict != "CERTIFIED_OTHER(22)"


def test_candidate_certificates_invariants():
    for P in candidate_models(generic_supersingular_curve(13)):
        c = certify_model(P)
        assert c.verdict != "INCONSISTENT"
        assert c.plus_p + c.minus_p == 22 and c.t2 == 22 * 13 * 13


def test_expected_kummer_counts():
    assert expected_kummer_counts(7, 3) == (176, 3480)
    assert expected_kummer_counts(11, 3) == (320, 17304)


@pytest.mark.parametrize("p", [7, 11, 23])
def test_verify_kummer_ranks_full_two_torsion(p):
    rep = verify_kummer_ranks(p)
    assert rep.passed and rep.rational_two_torsion == 3
    assert (rep.N1, rep.N2) == (1 + 18 * p + p * p, n2(p))


@pytest.mark.parametrize("p", [5, 13, 17])
def test_verify_kummer_ranks_partial_two_torsion(p):
    rep = verify_kummer_ranks(p)
    assert rep.passed and rep.rational_two_torsion == 1
    assert rep.N1 == 1 + 6 * p + p * p


def test_verify_kummer_fault_injection(monkeypatch):
    real = counting.fiber_point_count

    def wrong_leaves(F, q=None):
        n = real(F, q)
        return n - (F.residue_q if F.kodaira_class == "I0*" else 0)

    monkeypatch.setattr(counting, "fiber_point_count", wrong_leaves)
    with pytest.raises(ReportedMismatch):
        verify_kummer_ranks(7)
    assert not verify_kummer_ranks(7, strict=False).passed


def test_inert_examples():
    assert inert_check(-3, 11) == "inert"
    assert inert_check(-4, 13) == "split"
    assert inert_check(-3, 7) == "split"
    assert inert_check(-3, 3) == "ramified"


@pytest.mark.parametrize("d", [-3, -4])
def test_lemma_crosscheck_to_200(d):
    rows = lemma_crosscheck(d, 200)
    assert rows and all(r.agree for r in rows)
    assert {r.p for r in rows} == {p for p in range(5, 201) if is_prime(p)}


def test_lemma_crosscheck_examples():
    rows = {r.p: r for r in lemma_crosscheck(-3, 11)}
    assert rows[5].trace == 0 and rows[5].kronecker == -1
    assert rows[7].trace != 0 and rows[7].kronecker == 1
    assert 7 + 1 - rows[7].trace == 12
    rows4 = {r.p: r for r in lemma_crosscheck(-4, 11)}
    assert rows4[11].trace == 0 and rows4[11].kronecker == -1


def test_lemma_crosscheck_failure(monkeypatch):
    monkeypatch.setattr(certify, "kronecker", lambda d, p: 1)
    with pytest.raises(CrosscheckFailed):
        lemma_crosscheck(-3, 30)
    assert not all(r.agree for r in lemma_crosscheck(-3, 30, strict=False))


def test_sweep_examples():
    rows = sweep(5, 5)
    assert len(rows) == 1 and rows[0].certificate.N1 == 126
    rows = sweep(2, 10)
    assert [(r.p, r.status) for r in rows] == [
        (2, "UNSUPPORTED"), (3, "UNSUPPORTED"), (5, "CERTIFIED_21"), (7, "CERTIFIED_21")]
    with pytest.raises(ValueError):
        sweep(5, 211)


def test_certificate_dict_layout_and_round_trip():
    cert = prove_theorem1(13).certificate
    d = cert.to_dict()
    assert list(d) == ["p", "model", "fibers", "counts", "traces", "eigen", "rho_fp", "rho_fp2",
                       "artin_invariant", "verdict"]
    assert list(d["model"]) == ["curve", "params", "a4_coeffs", "a6_coeffs"]
    assert all(isinstance(c, str) for c in d["model"]["a6_coeffs"])
    assert list(d["fibers"][0]) == ["place", "type", "euler", "split"]
    back = Certificate.from_dict(json.loads(json.dumps(d)))
    assert back == cert


def test_certificate_from_counts_inconsistent():
    P = candidate_models(generic_supersingular_curve(13))[0]
    c = certificate_from_counts(P, 5, 7)
    assert c.verdict == "INCONSISTENT" and c.rho_fp is None and c.rho_fp2 is None


def test_cache_round_trip(tmp_path, monkeypatch):
    cache = CertificateCache(tmp_path)
    first = prove_theorem1(13, cache=cache).certificate
    files = sorted(tmp_path.glob("*.json"))
    assert files and not list(tmp_path.glob("*.tmp"))
    calls = []
    real = certify.surface_count
    monkeypatch.setattr(certify, "surface_count", lambda *a, **k: calls.append(a) or real(*a, **k))
    second = prove_theorem1(13, cache=cache).certificate
    assert second == first and not calls
    assert json.dumps(second.to_dict()) == json.dumps(first.to_dict())


def test_cache_key_depends_on_model():
    models = candidate_models(generic_supersingular_curve(13))
    keys = {cache_key(P.p, P.provenance, P.a4, P.a6) for P in models}
    assert len(keys) == len(models)

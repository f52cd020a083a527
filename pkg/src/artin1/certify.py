"""From point counts to Frobenius multiplicities, and the search for a rho = 21 model.

For a K3 surface X over F_p, #X(F_q) = 1 + Tr(Frob_q | H^2) + q^2.  If the
trace over F_{p^2} equals 22 p^2 then, since every eigenvalue has absolute
value p, all 22 eigenvalues are +-p; the trace over F_p then fixes how many
are +p.  Reading rho(X/F_p) as that multiplicity uses the Tate conjecture,
which holds for elliptic K3 surfaces.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Protocol

from .counting import kummer_count, surface_count
from .elliptic_curve import Curve, curve_make, curve_with_j, find_supersingular, supersingular_j_invariants, trace, two_torsion_roots
from .errors import CrosscheckFailed, Falsified, ReportedMismatch, UnsupportedCharacteristic
from .finite_field import field_make, is_prime, kronecker
from .kodaira import classify_fibers, euler_audit
from .pencil import Pencil, Provenance, candidate_models, kummer_model

MAX_PRIME = 200
ARTIN_INVARIANT = "1 (cited)"
VERSION = "1"


@dataclass(frozen=True)
class FiberRecord:
    place: str
    type: str
    euler: int
    split: bool | None = None


@dataclass(frozen=True)
class Certificate:
    p: int
    provenance: Provenance
    a4: tuple[int, ...]
    a6: tuple[int, ...]
    fibers: tuple[FiberRecord, ...]
    N1: int
    N2: int | None
    t1: int
    t2: int | None
    plus_p: int | None
    minus_p: int | None
    rho_fp: int | None
    rho_fp2: int | None
    verdict: str
    artin_invariant: str = ARTIN_INVARIANT

    @property
    def certified_21(self) -> bool:
        return self.verdict == "CERTIFIED_21"

    def to_dict(self) -> dict:
        """JSON-ready mapping in the published key order; coefficients as decimal strings."""
        prov = self.provenance
        s = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "p": self.p,
            "model": {
                "curve": {"a": s(prov.curve_a), "b": s(prov.curve_b), "j": s(prov.j)},
                "params": {"B_sign": prov.B_sign, "c": s(prov.c), "twist_d": s(prov.twist_d)},
                "a4_coeffs": [str(c) for c in self.a4],
                "a6_coeffs": [str(c) for c in self.a6],
            },
            "fibers": [{"place": f.place, "type": f.type, "euler": f.euler, "split": f.split} for f in self.fibers],
            "counts": {"N1": self.N1, "N2": self.N2},
            "traces": {"t1": self.t1, "t2": self.t2},
            "eigen": {"plus_p": self.plus_p, "minus_p": self.minus_p},
            "rho_fp": self.rho_fp,
            "rho_fp2": self.rho_fp2,
            "artin_invariant": self.artin_invariant,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        model = d["model"]
        i = lambda v: None if v is None else int(v)  # noqa: E731
        prov = Provenance(
            "inose" if model["params"]["B_sign"] is not None else "test",
            i(model["curve"]["a"]),
            i(model["curve"]["b"]),
            i(model["curve"]["j"]),
            model["params"]["B_sign"],
            i(model["params"]["c"]),
            int(model["params"]["twist_d"]),
        )
        return cls(
            p=d["p"],
            provenance=prov,
            a4=tuple(int(c) for c in model["a4_coeffs"]),
            a6=tuple(int(c) for c in model["a6_coeffs"]),
            fibers=tuple(FiberRecord(**f) for f in d["fibers"]),
            N1=d["counts"]["N1"],
            N2=d["counts"]["N2"],
            t1=d["traces"]["t1"],
            t2=d["traces"]["t2"],
            plus_p=d["eigen"]["plus_p"],
            minus_p=d["eigen"]["minus_p"],
            rho_fp=d["rho_fp"],
            rho_fp2=d["rho_fp2"],
            verdict=d["verdict"],
            artin_invariant=d["artin_invariant"],
        )


def eigen_multiplicities(p: int, N1: int, N2: int | None) -> tuple[int | None, int | None, str]:
    """(#eigenvalues +p, #eigenvalues -p, verdict) from the two counts.

    Inconsistent unless p | t1, |t1| <= 22p, 22 + t1/p is even and, when N2
    is given, t2 = 22 p^2.
    """
    t1 = N1 - 1 - p * p
    if t1 % p or abs(t1) > 22 * p or (22 + t1 // p) % 2:
        return None, None, "INCONSISTENT"
    if N2 is not None and N2 - 1 - p**4 != 22 * p * p:
        return None, None, "INCONSISTENT"
    plus = (22 + t1 // p) // 2
    if N2 is None:
        return plus, 22 - plus, f"UNCHECKED_Q2({plus})"
    return plus, 22 - plus, "CERTIFIED_21" if plus == 21 else f"CERTIFIED_OTHER({plus})"


def certificate_from_counts(P: Pencil, N1: int, N2: int | None, fibers: tuple[FiberRecord, ...] = ()) -> Certificate:
    p = P.p
    plus, minus, verdict = eigen_multiplicities(p, N1, N2)
    ok = verdict != "INCONSISTENT"
    return Certificate(
        p=p,
        provenance=P.provenance,
        a4=P.a4,
        a6=P.a6,
        fibers=fibers,
        N1=N1,
        N2=N2,
        t1=N1 - 1 - p * p,
        t2=None if N2 is None else N2 - 1 - p**4,
        plus_p=plus,
        minus_p=minus,
        rho_fp=plus if ok else None,
        rho_fp2=22 if ok and N2 is not None else None,
        verdict=verdict,
    )


def fiber_records(P: Pencil) -> tuple[FiberRecord, ...]:
    fibers = classify_fibers(P, 1)
    euler_audit(fibers, 12 * P.euler_char)
    return tuple(FiberRecord(f.place.label(), f.kodaira_class, f.euler, f.split) for f in fibers)


def certify_model(P: Pencil, workers: int = 1, skip_q2: bool = False) -> Certificate:
    """Count the pencil over F_p and F_{p^2} and read off the eigenvalue multiplicities."""
    records = fiber_records(P)
    N1 = surface_count(P, 1, workers)
    N2 = None if skip_q2 else surface_count(P, 2, workers)
    return certificate_from_counts(P, N1, N2, records)


class CertificateStore(Protocol):
    def get(self, P: Pencil) -> Certificate | None: ...

    def put(self, cert: Certificate) -> None: ...


@dataclass(frozen=True)
class CandidateResult:
    B_sign: int | None
    c: int | None
    twist_d: int
    N1: int
    N2: int | None
    verdict: str

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    p: int
    curve: Curve
    certificate: Certificate | None
    log: list[CandidateResult] = field(default_factory=list)


def check_prime(p: int) -> None:
    """Reject p in {2, 3} and composites before any work starts."""
    if p in (2, 3):
        raise UnsupportedCharacteristic(p)
    field_make(p)


def prove_theorem1(
    p: int,
    all_candidates: bool = False,
    workers: int = 1,
    cache: CertificateStore | None = None,
    curve: Curve | None = None,
    skip_q2: bool = False,
) -> SearchResult:
    """Search the twist family of the Inose pencil of E x E for rho(X/F_p) = 21.

    E defaults to :func:`find_supersingular`.  Candidates are certified in
    order until one is CERTIFIED_21 (or all of them, with ``all_candidates``).

    Raises:
        UnsupportedCharacteristic: p in {2, 3}.
        Falsified: no candidate certifies; carries the full candidate log.
    """
    check_prime(p)
    E = curve if curve is not None else find_supersingular(p)
    result = SearchResult(p, E, None)
    for P in candidate_models(E):
        cert = cache.get(P) if cache is not None and not skip_q2 else None
        if cert is None:
            cert = certify_model(P, workers, skip_q2)
            if cache is not None and not skip_q2:
                cache.put(cert)
        prov = P.provenance
        result.log.append(CandidateResult(prov.B_sign, prov.c, prov.twist_d, cert.N1, cert.N2, cert.verdict))
        if cert.certified_21 or (skip_q2 and cert.verdict == "UNCHECKED_Q2(21)"):
            if result.certificate is None:
                result.certificate = cert
            if not all_candidates:
                break
    if result.certificate is None:
        raise Falsified(p, result.log)
    return result


def twist_pairs(log: list[CandidateResult]) -> list[tuple[CandidateResult, CandidateResult]]:
    """Candidates sharing (B_sign, c) that differ only by the quadratic twist."""
    by_key: dict[tuple, list[CandidateResult]] = {}
    for r in log:
        by_key.setdefault((r.B_sign, r.c), []).append(r)
    return [(rs[0], rs[1]) for rs in by_key.values() if len(rs) == 2]


def generic_supersingular_curve(p: int) -> Curve | None:
    """A supersingular curve over F_p with j not in {0, 1728}, if there is one."""
    special = {0, 1728 % p}
    js = [j for j in supersingular_j_invariants(p) if j not in special]
    return curve_with_j(p, js[0]) if js else None


@dataclass(frozen=True)
class KummerReport:
    p: int
    curve_a: int
    curve_b: int
    rational_two_torsion: int
    N1: int
    N2: int
    expected_N1: int
    expected_N2: int
    two_path_agree: bool

    @property
    def passed(self) -> bool:
        return self.two_path_agree and (self.N1, self.N2) == (self.expected_N1, self.expected_N2)

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def kummer_curve(p: int) -> Curve:
    """Supersingular E/F_p with as much rational 2-torsion as possible.

    Full 2-torsion needs 4 | p + 1, so y^2 = x^3 - x is used when p = 3 mod 4.
    """
    if p % 4 == 3:
        return curve_make(field_make(p), -1, 0)
    return find_supersingular(p)


def expected_kummer_counts(p: int, rational_roots: int) -> tuple[int, int]:
    """Counts predicted by the Neron-Severi ledger of pi_0 on Km(E x E), E supersingular.

    Over F_p: zero section and fibre (2), each rational I0* fibre
    (infinity and the rational roots r of f) contributes 1 + r eigenvalues +p
    net of conjugate pairs, and the Mordell-Weil part Hom(E, E) has rank 2
    with the other 2 eigenvalues -p, trace 0.  Over F_{p^2} all 22 are +p^2.
    """
    r = rational_roots
    trace_over_p = 2 + (r + 1) * (r + 1)
    return 1 + trace_over_p * p + p * p, 1 + 22 * p * p + p**4


def verify_kummer_ranks(p: int, workers: int = 1, strict: bool = True) -> KummerReport:
    """Count Km(E x E) two ways and compare with the lattice prediction.

    Raises:
        ReportedMismatch: (strict only) counts differ from the prediction or
            the two counting paths disagree.
    """
    check_prime(p)
    E = kummer_curve(p)
    K = kummer_model(E, E)
    P = K.pencil()
    euler_audit(classify_fibers(P, 1))
    N1, N2 = kummer_count(K, 1), kummer_count(K, 2)
    agree = (N1, N2) == (surface_count(P, 1, workers), surface_count(P, 2, workers))
    r = len(two_torsion_roots(E))
    e1, e2 = expected_kummer_counts(p, r)
    report = KummerReport(p, int(E.a), int(E.b), r, N1, N2, e1, e2, agree)
    if strict and not report.passed:
        raise ReportedMismatch(f"Km(E x E) over F_{p}: got {(N1, N2)}, expected {(e1, e2)}, paths agree: {agree}")
    return report


def inert_check(d: int, p: int) -> str:
    """Splitting of the odd prime p in Q(sqrt(d)): 'inert', 'split' or 'ramified'."""
    return {-1: "inert", 0: "ramified", 1: "split"}[kronecker(d, p)]


@dataclass(frozen=True)
class CrosscheckRow:
    p: int
    kronecker: int
    trace: int
    agree: bool


def cm_curve(d: int, p: int) -> Curve:
    F = field_make(p)
    if d == -3:
        return curve_make(F, 0, 1)
    if d == -4:
        return curve_make(F, -1, 0)
    raise ValueError("only d = -3 and d = -4 are supported")


def lemma_crosscheck(d: int, p_max: int, strict: bool = True) -> list[CrosscheckRow]:
    """For good primes 5 <= p <= p_max: the CM curve of discriminant d has trace 0 iff p is inert.

    Raises:
        CrosscheckFailed: (strict only) some prime disagrees.
    """
    rows = []
    for p in range(5, p_max + 1):
        if not is_prime(p) or d % p == 0:
            continue
        kr = kronecker(d, p)
        tr = trace(cm_curve(d, p))
        rows.append(CrosscheckRow(p, kr, tr, (tr == 0) == (kr == -1)))
    bad = [r.p for r in rows if not r.agree]
    if strict and bad:
        raise CrosscheckFailed(f"trace-zero and inertness disagree at p = {bad}")
    return rows


@dataclass
class SweepRow:
    p: int
    status: str
    certificate: Certificate | None = None
    message: str = ""


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def sweep(p_min: int, p_max: int, workers: int = 1, cache: CertificateStore | None = None) -> list[SweepRow]:
    """prove_theorem1 for every prime in [p_min, p_max]; 2 and 3 are reported as unsupported.

    Raises:
        ValueError: p_max above the prime cap.
        Falsified: as soon as one prime fails.
    """
    if p_max > MAX_PRIME:
        raise ValueError(f"p_max = {p_max} exceeds the cap {MAX_PRIME}")
    rows = []
    for p in primes_between(p_min, p_max):
        if p in (2, 3):
            rows.append(SweepRow(p, "UNSUPPORTED", message=str(UnsupportedCharacteristic(p))))
            continue
        res = prove_theorem1(p, workers=workers, cache=cache)
        rows.append(SweepRow(p, res.certificate.verdict, res.certificate))
    return rows

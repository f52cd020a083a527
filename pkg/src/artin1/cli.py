"""Command-line entry point.

    artin1 certify --prime P [--all-candidates] [--skip-q2]
    artin1 sweep --min A --max B
    artin1 kummer --prime P
    artin1 inert --disc D --max P
    artin1 selftest

Global flags (before or after the command): --format json|csv|text,
--threads N, --cache DIR (default $ARTIN1_CACHE).

Exit codes: 0 success, 1 falsified / failed check, 2 usage error,
3 unsupported characteristic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass

from . import certify
from .cache import CertificateCache
from .certify import MAX_PRIME, Certificate
from .counting import default_workers, naive_fiber_count, selftest_rational_surface
from .elliptic_curve import curve_make, point_count
from .errors import Artin1Error, Falsified, NonPrime, UnsupportedCharacteristic
from .finite_field import field_make, is_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3

CSV_FIELDS = [
    "p", "curve_a", "curve_b", "j", "B_sign", "c", "twist_d", "a4_coeffs", "a6_coeffs",
    "N1", "N2", "t1", "t2", "plus_p", "minus_p", "rho_fp", "rho_fp2", "artin_invariant", "verdict",
]


@dataclass(frozen=True)
class RunConfig:
    command: str
    prime: int | None = None
    range: tuple[int, int] | None = None
    disc: int | None = None
    output_format: str = "text"
    workers: int = 1
    cache_dir: str | None = None
    skip_q2: bool = False
    all_candidates: bool = False


def certificate_row(cert: Certificate) -> dict:
    d = cert.to_dict()
    m = d["model"]
    return {
        "p": d["p"], **{k: m["curve"][k2] for k, k2 in (("curve_a", "a"), ("curve_b", "b"), ("j", "j"))},
        **m["params"],
        "a4_coeffs": " ".join(m["a4_coeffs"]), "a6_coeffs": " ".join(m["a6_coeffs"]),
        **d["counts"], **d["traces"], **d["eigen"],
        "rho_fp": d["rho_fp"], "rho_fp2": d["rho_fp2"], "artin_invariant": d["artin_invariant"],
        "verdict": d["verdict"],
    }


def _csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: "" if r.get(k) is None else r.get(k) for k in fields})
    return buf.getvalue()


def certificate_text(cert: Certificate) -> str:
    prov = cert.provenance
    lines = [
        f"p = {cert.p}",
        f"curve      y^2 = x^3 + {prov.curve_a}x + {prov.curve_b}   (j = {prov.j})",
        f"params     B_sign = {prov.B_sign}, c = {prov.c}, twist d = {prov.twist_d}",
        f"A4 coeffs  {' '.join(map(str, cert.a4))}",
        f"A6 coeffs  {' '.join(map(str, cert.a6))}",
        "fibres     " + ", ".join(f"{f.type}@{f.place}" for f in cert.fibers),
        f"#X(F_p)    N1 = {cert.N1}   t1 = {cert.t1}",
        f"#X(F_p^2)  N2 = {cert.N2}   t2 = {cert.t2}",
        f"eigen      +p x {cert.plus_p}, -p x {cert.minus_p}",
        f"rho        {cert.rho_fp} over F_p, {cert.rho_fp2} over F_p^2",
        f"Artin inv. {cert.artin_invariant}",
        f"verdict    {cert.verdict}",
    ]
    return "\n".join(lines) + "\n"


def emit_certificate(cert: Certificate, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(cert.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        return _csv([certificate_row(cert)], CSV_FIELDS)
    return certificate_text(cert)


def parse_certificate(text: str) -> Certificate:
    return Certificate.from_dict(json.loads(text))


# commands


def cmd_certify(cfg: RunConfig, cache) -> tuple[int, str]:
    res = certify.prove_theorem1(cfg.prime, cfg.all_candidates, cfg.workers, cache, skip_q2=cfg.skip_q2)
    cert = res.certificate
    if not cfg.all_candidates:
        return EXIT_OK, emit_certificate(cert, cfg.output_format)
    log = [r.to_dict() for r in res.log]
    if cfg.output_format == "json":
        return EXIT_OK, json.dumps({"certificate": cert.to_dict(), "candidates": log}, indent=2) + "\n"
    if cfg.output_format == "csv":
        return EXIT_OK, emit_certificate(cert, "csv") + "\n" + _csv(log, list(log[0]))
    table = "\n".join(f"  B_sign={r['B_sign']:+d} c={r['c']} d={r['twist_d']}  N1={r['N1']}  N2={r['N2']}  {r['verdict']}"
                      for r in log)
    return EXIT_OK, certificate_text(cert) + "candidates:\n" + table + "\n"


def cmd_sweep(cfg: RunConfig, cache) -> tuple[int, str]:
    lo, hi = cfg.range
    rows = certify.sweep(lo, hi, cfg.workers, cache)
    certified = [r for r in rows if r.certificate is not None]
    aggregate = "ALL_CERTIFIED" if all(r.certificate.certified_21 for r in certified) else "NOT_ALL_CERTIFIED"
    code = EXIT_OK if aggregate == "ALL_CERTIFIED" else EXIT_FAIL
    if cfg.output_format == "json":
        payload = {
            "range": [lo, hi],
            "rows": [{"p": r.p, "status": r.status, "certificate": r.certificate.to_dict() if r.certificate else None,
                      "message": r.message} for r in rows],
            "aggregate": aggregate,
        }
        return code, json.dumps(payload, indent=2) + "\n"
    if cfg.output_format == "csv":
        out = [certificate_row(r.certificate) if r.certificate else {"p": r.p, "verdict": r.status} for r in rows]
        return code, _csv(out, CSV_FIELDS)
    lines = [f"{'p':>4}  {'N1':>10}  {'N2':>14}  verdict"]
    for r in rows:
        if r.certificate:
            c = r.certificate
            lines.append(f"{r.p:>4}  {c.N1:>10}  {c.N2:>14}  {c.verdict}")
        else:
            lines.append(f"{r.p:>4}  {'-':>10}  {'-':>14}  {r.status}: {r.message}")
    lines.append(f"aggregate: {aggregate}")
    return code, "\n".join(lines) + "\n"


def cmd_kummer(cfg: RunConfig, cache) -> tuple[int, str]:
    rep = certify.verify_kummer_ranks(cfg.prime, cfg.workers, strict=False)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    d = rep.to_dict()
    if cfg.output_format == "json":
        return code, json.dumps(d, indent=2) + "\n"
    if cfg.output_format == "csv":
        return code, _csv([d], list(d))
    text = (
        f"Km(E x E), E: y^2 = x^3 + {rep.curve_a}x + {rep.curve_b} over F_{rep.p} "
        f"({rep.rational_two_torsion} rational 2-torsion x-coordinates)\n"
        f"#Km(F_p)   = {rep.N1}  (expected {rep.expected_N1})\n"
        f"#Km(F_p^2) = {rep.N2}  (expected {rep.expected_N2})\n"
        f"fast path and fibrewise engine agree: {rep.two_path_agree}\n"
        f"{'PASS' if rep.passed else 'FAIL'}\n"
    )
    return code, text


def cmd_inert(cfg: RunConfig, cache) -> tuple[int, str]:
    rows = certify.lemma_crosscheck(cfg.disc, cfg.prime, strict=False)
    ok = all(r.agree for r in rows)
    code = EXIT_OK if ok else EXIT_FAIL
    dicts = [asdict(r) | {"splitting": certify.inert_check(cfg.disc, r.p)} for r in rows]
    if cfg.output_format == "json":
        return code, json.dumps({"disc": cfg.disc, "max": cfg.prime, "rows": dicts, "agreement": ok}, indent=2) + "\n"
    if cfg.output_format == "csv":
        return code, _csv(dicts, ["p", "kronecker", "splitting", "trace", "agree"])
    lines = [f"{r['p']:>4}  ({cfg.disc}|p) = {r['kronecker']:+d}  {r['splitting']:<8}  trace = {r['trace']:>4}  "
             f"{'agree' if r['agree'] else 'DISAGREE'}" for r in dicts]
    lines.append(f"agreement: {sum(r['agree'] for r in dicts)}/{len(dicts)}")
    return code, "\n".join(lines) + "\n"


def run_selftests(workers: int = 1) -> list[tuple[str, bool, str]]:
    """Small end-to-end checks: field/curve oracles, rational surface, Kummer at p = 7."""
    results: list[tuple[str, bool, str]] = []

    def check(name: str, fn) -> None:
        try:
            detail = fn()
            results.append((name, True, str(detail)))
        except (Artin1Error, AssertionError) as exc:
            results.append((name, False, str(exc)))

    def oracle() -> str:
        n = 0
        for q in (5, 7, 25):
            F = field_make(round(q**0.5), 2) if q == 25 else field_make(q)
            for a in F.elements():
                for b in F.elements():
                    if not (4 * a**3 + 27 * b * b):
                        continue
                    assert point_count(curve_make(F, a, b)) == naive_fiber_count(a, b, F), (q, a, b)
                    n += 1
        return f"{n} curves"

    def character() -> str:
        F = field_make(7, 2)
        for z in F.elements():
            e = z ** ((F.q - 1) // 2)
            assert F.chi(z) == (0 if not z else (1 if e == 1 else -1))
        return "norm rule on F_49"

    check("character sums vs naive enumeration", oracle)
    check("quadratic character vs Euler criterion", character)
    for q in (5, 7, 11, 13, 25, 49, 121):
        check(f"rational surface y^2 = x^3 + t over F_{q}", lambda q=q: selftest_rational_surface(q, workers))
    check("Kummer E x E at p = 7", lambda: (r := certify.verify_kummer_ranks(7, workers)) and (r.N1, r.N2))
    return results


def cmd_selftest(cfg: RunConfig, cache) -> tuple[int, str]:
    results = run_selftests(cfg.workers)
    ok = all(r[1] for r in results)
    code = EXIT_OK if ok else EXIT_FAIL
    if cfg.output_format == "json":
        payload = {"checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results], "passed": ok}
        return code, json.dumps(payload, indent=2) + "\n"
    if cfg.output_format == "csv":
        return code, _csv([{"name": n, "passed": p, "detail": d} for n, p, d in results], ["name", "passed", "detail"])
    return code, "".join(f"{'PASS' if p else 'FAIL'}  {n}  [{d}]\n" for n, p, d in results)


COMMANDS = {"certify": cmd_certify, "sweep": cmd_sweep, "kummer": cmd_kummer, "inert": cmd_inert, "selftest": cmd_selftest}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker threads (default: all cores)")
    common.add_argument("--cache", default=argparse.SUPPRESS, help="certificate cache directory (default: $ARTIN1_CACHE)")

    parser = argparse.ArgumentParser(
        prog="artin1",
        parents=[common],
        description="Point-count certificates for F_p-models of a supersingular K3 surface "
        "with Picard number 21 over F_p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("certify", parents=[common], help="certify one prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--all-candidates", action="store_true", help="certify every candidate model, not just the first hit")
    p.add_argument("--skip-q2", action="store_true", help="debug: count over F_p only")
    p = sub.add_parser("sweep", parents=[common], help="certify every prime in a range")
    p.add_argument("--min", type=int, required=True, dest="p_min")
    p.add_argument("--max", type=int, required=True, dest="p_max")
    p = sub.add_parser("kummer", parents=[common], help="point counts of Km(E x E) against the rank prediction")
    p.add_argument("--prime", type=int, required=True)
    p = sub.add_parser("inert", parents=[common], help="trace-zero vs inertness cross-check")
    p.add_argument("--disc", type=int, required=True, choices=(-3, -4))
    p.add_argument("--max", type=int, required=True, dest="p_max")
    sub.add_parser("selftest", parents=[common], help="run the built-in oracle checks")
    return parser


def parse_config(argv: list[str] | None) -> tuple[RunConfig, argparse.ArgumentParser]:
    parser = build_parser()
    ns = parser.parse_args(argv)
    threads = getattr(ns, "threads", None)
    threads = default_workers() if threads is None else threads
    if threads < 1:
        parser.error("--threads must be positive")
    cfg = RunConfig(
        command=ns.command,
        prime=getattr(ns, "prime", None) if ns.command != "inert" else ns.p_max,
        range=(ns.p_min, ns.p_max) if ns.command == "sweep" else None,
        disc=getattr(ns, "disc", None),
        output_format=getattr(ns, "format", "text"),
        workers=threads,
        cache_dir=getattr(ns, "cache", None) or os.environ.get("ARTIN1_CACHE") or None,
        skip_q2=getattr(ns, "skip_q2", False),
        all_candidates=getattr(ns, "all_candidates", False),
    )
    return cfg, parser


def _validate(cfg: RunConfig, parser: argparse.ArgumentParser) -> int | None:
    """Prime-cap and primality checks that must happen before any counting."""
    if cfg.command in ("certify", "kummer"):
        p = cfg.prime
        if p in (2, 3):
            print(f"artin1: {UnsupportedCharacteristic(p)}", file=sys.stderr)
            return EXIT_UNSUPPORTED
        if not is_prime(p):
            parser.error(f"--prime {p} is not a prime")
        if p > MAX_PRIME:
            parser.error(f"--prime {p} exceeds the cap of {MAX_PRIME}")
    if cfg.command == "sweep":
        lo, hi = cfg.range
        if lo > hi:
            parser.error("--min must not exceed --max")
        if hi > MAX_PRIME:
            parser.error(f"--max {hi} exceeds the cap of {MAX_PRIME}")
    if cfg.command == "inert" and not 5 <= cfg.prime <= 100_000:
        parser.error("--max must lie in [5, 100000]")
    return None


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        cfg, parser = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        early = _validate(cfg, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    if early is not None:
        return early
    cache = CertificateCache(cfg.cache_dir) if cfg.cache_dir else None
    try:
        code, out = COMMANDS[cfg.command](cfg, cache)
    except UnsupportedCharacteristic as exc:
        print(f"artin1: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Falsified as exc:
        print(f"artin1: FALSIFIED at p = {exc.p}; candidate log:", file=sys.stderr)
        for r in exc.log:
            print(f"  {r}", file=sys.stderr)
        return EXIT_FAIL
    except NonPrime as exc:
        print(f"artin1: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Dense univariate polynomials in t with coefficients in F_p.

A polynomial is a tuple of ints in [0, p), lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  Evaluation and valuations
may happen at points of F_{p^2}, so those helpers accept field elements.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .finite_field import FieldElement, FiniteField

Poly = tuple[int, ...]


def trim(coeffs: Sequence[int], p: int) -> Poly:
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Poly) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def scale(f: Poly, c: int, p: int) -> Poly:
    return trim([c * x for x in f], p)


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return trim(out, p)


def power(f: Poly, e: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = mul(out, f, p)
    return out


def chart_at_infinity(f: Poly, weight: int, p: int) -> Poly:
    """s^weight * f(1/s): the coefficient list reversed inside length weight+1."""
    if degree(f) > weight:
        raise ValueError(f"degree {degree(f)} exceeds chart weight {weight}")
    padded = list(f) + [0] * (weight + 1 - len(f))
    return trim(padded[::-1], p)


def evaluate(f: Poly, z: FieldElement) -> FieldElement:
    acc = z.field.zero
    for c in reversed(f):
        acc = acc * z + c
    return acc


def valuation(f: Poly, z: FieldElement) -> tuple[float, FieldElement]:
    """Order of vanishing of f at t = z and the leading residual value.

    Returns ``(v, r)`` with ``f = (t - z)^v * g`` and ``r = g(z) != 0``.  The
    zero polynomial has valuation ``math.inf`` and residual 0.
    """
    F = z.field
    if not f:
        return math.inf, F.zero
    coeffs = [F.element(c) for c in f]
    v = 0
    while True:
        # synthetic division by (t - z)
        acc, quotient = F.zero, []
        for c in reversed(coeffs):
            acc = acc * z + c
            quotient.append(acc)
        remainder = quotient.pop()
        if remainder:
            return v, remainder
        coeffs = quotient[::-1]
        v += 1


def residual_at(f: Poly, z: FieldElement, order: int) -> FieldElement:
    """(f / (t - z)^order)(z), assuming (t - z)^order divides f; 0 if it vanishes further."""
    v, r = valuation(f, z)
    if v < order:
        raise ValueError(f"(t - {z})^{order} does not divide the polynomial")
    return r if v == order else z.field.zero


def evaluate_all(f: Poly, field: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    """f(t) for every t in the field, as component arrays in index order."""
    t = field.components()
    acc = (np.zeros(field.q, dtype=np.int64), np.zeros(field.q, dtype=np.int64))
    for c in reversed(f):
        acc = field.vmul(acc, t)
        acc = ((acc[0] + c) % field.p, acc[1])
    return acc


def to_string(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)

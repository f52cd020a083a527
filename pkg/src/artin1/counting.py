"""Fibrewise point counting on elliptic surfaces over F_p and F_{p^2}.

#X(F_q) is the sum over t in P^1(F_q) of the number of F_q-points on the
fibre of the smooth minimal model.  Smooth fibres are counted as
q + 1 + sum_x chi(x^3 + a x + b); singular fibres come from the correction
table in :mod:`artin1.kodaira`.  Smooth fibres are processed in blocks of
places, each block one 2-D numpy gather into the character table, and blocks
can be spread over a thread pool.  The reduction is an integer sum, so the
result does not depend on the worker count or block order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import polynomial as poly
from .errors import InternalError, SelftestFailed
from .finite_field import FiniteField, field_make
from .kodaira import classify_fibers, fiber_point_count
from .pencil import KummerModel, Pencil, Provenance, pencil_make

# elements per block: places_per_block * q stays below this
BLOCK_ELEMENTS = 1 << 21


def default_workers() -> int:
    return os.cpu_count() or 1


class _Kernel:
    """Character sums sum_x chi(x^3 + a x + b) for many (a, b) at once."""

    def __init__(self, K: FiniteField):
        self.K = K
        x = K.components()
        x3 = K.vmul(K.vmul(x, x), x)
        self.x0, self.x1 = (c.astype(np.int32) for c in x)
        self.c0, self.c1 = (c.astype(np.int32) for c in x3)
        self.chi = K.chi_table if K.chi_table is not None else K.chi_indices(np.arange(K.q))

    def __call__(self, a0, a1, b0, b1) -> np.ndarray:
        K, p = self.K, self.K.p
        a0, a1, b0, b1 = (np.asarray(v, dtype=np.int32)[:, None] for v in (a0, a1, b0, b1))
        if K.degree == 1:
            idx = (self.c0 + a0 * self.x0 + b0) % p
        else:
            v0 = (self.c0 + a0 * self.x0 + K.nonresidue * (a1 * self.x1 % p) + b0) % p
            v1 = (self.c1 + a0 * self.x1 + a1 * self.x0 + b1) % p
            idx = v0 + p * v1
        return self.chi[idx].sum(axis=1, dtype=np.int64)


def _blocks(n: int, size: int) -> list[slice]:
    return [slice(i, min(i + size, n)) for i in range(0, n, size)]


def smooth_fiber_sum(K: FiniteField, a, b, workers: int = 1) -> int:
    """sum over the given places of (q + 1 + sum_x chi(x^3 + a_t x + b_t)).

    ``a`` and ``b`` are component-array pairs, one entry per place.
    """
    n = len(a[0])
    if n == 0:
        return 0
    kernel = _Kernel(K)
    size = max(1, BLOCK_ELEMENTS // K.q)

    def run(sl: slice) -> int:
        return int(kernel(a[0][sl], a[1][sl], b[0][sl], b[1][sl]).sum())

    blocks = _blocks(n, size)
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(run, blocks))
    else:
        total = sum(run(sl) for sl in blocks)
    return n * (K.q + 1) + total


def surface_count(P: Pencil, k: int = 1, workers: int = 1, shuffle_seed: int | None = None) -> int:
    """#X(F_{p^k}) for the smooth minimal model of the pencil.

    ``shuffle_seed`` permutes the order in which smooth places are processed;
    the result must not change.
    """
    K = field_make(P.p, k)
    fibers = classify_fibers(P, k)
    total = 0
    singular: set[int] = set()
    infinity_singular = False
    for F in fibers:
        if F.place.kind == "infinity":
            infinity_singular = True
        elif F.residue_q != K.q:
            continue  # closed point of degree 2 seen from F_p: no rational fibre
        else:
            r0, r1 = F.place.root.pair
            singular.add(r0 + P.p * r1)
        total += fiber_point_count(F, K.q)

    a = poly.evaluate_all(P.a4, K)
    b = poly.evaluate_all(P.a6, K)
    disc = K.vadd(K.vmul(K.vmul(K.vmul(a, a), a), (4, 0)), K.vmul(K.vmul(b, b), (27, 0)))
    if set(np.flatnonzero(K.vindex(disc) == 0).tolist()) != singular:
        raise InternalError("singular places disagree with the zeros of the discriminant")
    good = np.ones(K.q, dtype=bool)
    good[list(singular)] = False
    order = np.flatnonzero(good)
    if shuffle_seed is not None:
        order = np.random.default_rng(shuffle_seed).permutation(order)
    total += smooth_fiber_sum(K, (a[0][order], a[1][order]), (b[0][order], b[1][order]), workers)

    if not infinity_singular:
        c4, c6 = P.chart_at_infinity()
        zero = np.zeros(1, dtype=np.int64)
        a_inf = np.array([c4[0] if c4 else 0])
        b_inf = np.array([c6[0] if c6 else 0])
        total += smooth_fiber_sum(K, (a_inf, zero), (b_inf, zero))
    return total


def kummer_count(K: KummerModel, k: int = 1) -> int:
    """#Km(F_{p^k}) for f(t) y^2 = g(x) by the twist rule, without classification.

    A good fibre is the twist of y^2 = g(x) by f(t), so it has
    q + 1 + chi(f(t)) * S_g points with S_g = sum_x chi(g(x)).  The roots of f
    and t = infinity carry I0* fibres with 1 + #{roots of g} rational leaves.
    """
    from .elliptic_curve import cubic_values

    F = field_make(K.field.p, k)
    q = F.q
    g = K.g + (0,) * (4 - len(K.g))
    g_vals = cubic_values(F, F(g[1]), F(g[0]))
    s_g = int(F.chi_indices(g_vals).sum())
    roots_g = int(np.count_nonzero(g_vals == 0))
    f_idx = F.vindex(poly.evaluate_all(K.f, F))
    chi_f = F.chi_indices(f_idx).astype(np.int64)
    roots_f = int(np.count_nonzero(f_idx == 0))
    good = q - roots_f
    smooth = good * (q + 1) + int(chi_f.sum()) * s_g
    bad = (roots_f + (1 if poly.degree(K.f) == 3 else 0)) * (q + 1 + (1 + roots_g) * q)
    return smooth + bad


def naive_fiber_count(a, b, field: FiniteField) -> int:
    """Projective points on y^2 = x^3 + a x + b by comparing y^2 with the cubic for every (x, y)."""
    if field.q > 2500:
        raise ValueError("naive counting is limited to q <= 2500")
    a = field.element(a) if not hasattr(a, "pair") else a
    b = field.element(b) if not hasattr(b, "pair") else b
    y = field.components()
    y2 = field.vindex(field.vmul(y, y))
    x = y
    rhs = field.vindex(field.vadd(field.vadd(field.vmul(field.vmul(x, x), x), field.vmul(a.pair, x)), b.pair))
    return int(np.count_nonzero(rhs[:, None] == y2[None, :])) + 1


def rational_test_surface(p: int) -> Pencil:
    """y^2 = x^3 + t as a rational elliptic surface: II at t = 0, II* at infinity."""
    return pencil_make(field_make(p), (), (0, 1), Provenance("test"), euler_char=1)


def selftest_rational_surface(q: int, workers: int = 1) -> int:
    """Check #S(F_q) = q^2 + 10q + 1 for S: y^2 = x^3 + t; returns the count.

    Raises:
        SelftestFailed: the engine disagrees with the closed form.
    """
    r = round(q**0.5)
    p, k = (r, 2) if r * r == q else (q, 1)
    N = surface_count(rational_test_surface(p), k, workers)
    expected = q * q + 10 * q + 1
    if N != expected:
        raise SelftestFailed(f"#S(F_{q}) = {N}, expected {expected}")
    return N

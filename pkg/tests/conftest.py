from __future__ import annotations

import pytest

from artin1.finite_field import field_make, is_prime

SMALL_FIELDS = [(p, 1) for p in range(5, 50) if is_prime(p)] + [(5, 2), (7, 2)]


def brute_count_prime(p: int, a: int, b: int) -> int:
    """Projective points of y^2 = x^3 + ax + b over F_p by a plain double loop."""
    n = 1
    for x in range(p):
        rhs = (x * x * x + a * x + b) % p
        for y in range(p):
            if (y * y - rhs) % p == 0:
                n += 1
    return n


def brute_count_field(F, a, b) -> int:
    """Same double loop with field-element arithmetic; works over F_{p^2}."""
    els = list(F.elements())
    squares: dict = {}
    for y in els:
        squares[y * y] = squares.get(y * y, 0) + 1
    return 1 + sum(squares.get(x * x * x + a * x + b, 0) for x in els)


def euler_criterion(z) -> int:
    if not z:
        return 0
    return 1 if z ** ((z.field.q - 1) // 2) == 1 else -1


@pytest.fixture(params=SMALL_FIELDS, ids=lambda f: f"F{f[0]**f[1]}")
def small_field(request):
    return field_make(*request.param)

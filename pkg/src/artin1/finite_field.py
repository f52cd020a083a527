"""Arithmetic in F_p and F_{p^2} = F_p[u]/(u^2 - n).

Elements are small immutable values.  Every field carries a table of the
quadratic character indexed by the integer encoding ``c0 + p*c1`` of an
element, which is what the point counter hammers on.  The vectorised helpers
at the bottom work on pairs of numpy arrays ``(c0, c1)`` and are the only
thing the hot loops touch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NonPrime, UnsupportedCharacteristic, ZeroInput

# Above this many entries the F_{p^2} table is not built and the character is
# computed as chi_p(Norm(z)) instead.
CHI_TABLE_CUTOFF = 1 << 26


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, 1} for an odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def primitive_root(p: int) -> int:
    """Smallest generator of F_p^*."""
    m, factors, d = p - 1, [], 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    return 1  # p == 2


def kronecker(d: int, p: int) -> int:
    """Kronecker symbol (d|p) for an odd prime p."""
    return legendre(d, p)


@dataclass(frozen=True, eq=False)
class FiniteField:
    """F_q with q = p**degree; degree 2 is presented as F_p[u]/(u^2 - nonresidue).

    Use :func:`field_make` rather than the constructor: it validates ``p``,
    picks the nonresidue and builds the character table.
    """

    p: int
    degree: int
    nonresidue: int = 0
    chi_table: np.ndarray | None = field(default=None, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.degree

    @property
    def modulus(self) -> tuple[int, ...]:
        """Coefficients (low to high) of the defining polynomial."""
        if self.degree == 1:
            return (0, 1)
        return ((-self.nonresidue) % self.p, 0, 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self) -> int:
        return hash((self.p, self.degree))

    def __repr__(self) -> str:
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.q}=F_{self.p}[u]/(u^2-{self.nonresidue})"

    # element construction

    def __call__(self, c0: int | FieldElement, c1: int = 0) -> FieldElement:
        return self.element(c0, c1)

    def element(self, c0: int | FieldElement, c1: int = 0) -> FieldElement:
        if isinstance(c0, FieldElement):
            return self.lift(c0)
        if self.degree == 1:
            if c1 % self.p:
                raise FieldMismatch(f"{self!r} has no u-coordinate")
            return FieldElement(self, (c0 % self.p,))
        return FieldElement(self, (c0 % self.p, c1 % self.p))

    def lift(self, z: FieldElement) -> FieldElement:
        """Embed an element of a field of the same characteristic into this one."""
        if z.field.p != self.p:
            raise FieldMismatch(f"cannot move {z!r} from {z.field!r} into {self!r}")
        if z.field.degree == self.degree:
            return z
        if z.field.degree == 2:
            if z.coeffs[1]:
                raise FieldMismatch(f"{z!r} does not lie in {self!r}")
            return FieldElement(self, (z.coeffs[0],))
        return self.element(z.coeffs[0])

    def from_index(self, i: int) -> FieldElement:
        if self.degree == 1:
            return FieldElement(self, (i % self.p,))
        return FieldElement(self, (i % self.p, i // self.p))

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    @property
    def gen(self) -> FieldElement:
        """The adjoined square root u of the nonresidue."""
        if self.degree == 1:
            raise FieldMismatch("F_p has no adjoined generator")
        return FieldElement(self, (0, 1))

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.q):
            yield self.from_index(i)

    # quadratic character

    def chi(self, z: FieldElement | int) -> int:
        if not isinstance(z, FieldElement):
            z = self.element(z)
        if z.field != self:
            raise FieldMismatch(f"{z!r} is not in {self!r}")
        if self.chi_table is not None:
            return int(self.chi_table[z.index])
        return legendre(z.norm(), self.p)

    def chi_indices(self, idx: np.ndarray) -> np.ndarray:
        """Character values (int8) for an array of element encodings."""
        if self.chi_table is not None:
            return self.chi_table[idx]
        base = field_make(self.p, 1).chi_table
        c0, c1 = idx % self.p, idx // self.p
        return base[(c0 * c0 - self.nonresidue * c1 * c1) % self.p]

    # vectorised arithmetic on component arrays

    def components(self) -> tuple[np.ndarray, np.ndarray]:
        """All elements of the field as component arrays, in index order."""
        idx = np.arange(self.q, dtype=np.int64)
        return idx % self.p, idx // self.p

    def vmul(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        if self.degree == 1:
            return (a[0] * b[0]) % p, a[1] * 0
        return ((a[0] * b[0] + self.nonresidue * (a[1] * b[1] % p)) % p,
                (a[0] * b[1] + a[1] * b[0]) % p)

    def vadd(self, a: tuple, b: tuple) -> tuple:
        return (a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p

    def vindex(self, a: tuple) -> np.ndarray:
        return a[0] + self.p * a[1]


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: FiniteField
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        if self.field.degree == 1:
            return self.coeffs[0]
        return self.coeffs[0] + self.field.p * self.coeffs[1]

    @property
    def pair(self) -> tuple[int, int]:
        """(c0, c1) with c1 = 0 for elements of F_p."""
        return (self.coeffs[0], self.coeffs[1] if len(self.coeffs) == 2 else 0)

    def in_base_field(self) -> bool:
        return self.field.degree == 1 or self.coeffs[1] == 0

    def __int__(self) -> int:
        if not self.in_base_field():
            raise ValueError(f"{self!r} is not in F_{self.field.p}")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        if self.in_base_field():
            return str(self.coeffs[0])
        c0, c1 = self.coeffs
        return f"{c1}u" if c0 == 0 else f"{c0}+{c1}u"

    def __lt__(self, other: FieldElement) -> bool:
        return self.index < self._coerce(other).index

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, np.integer)):
            return self == self.field.element(int(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def __add__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> FieldElement:
        return (-self) + other

    def __mul__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, ((self.coeffs[0] * other.coeffs[0]) % p,))
        a0, a1 = self.coeffs
        b0, b1 = other.coeffs
        n = self.field.nonresidue
        return FieldElement(self.field, ((a0 * b0 + n * a1 * b1) % p, (a0 * b1 + a1 * b0) % p))

    __rmul__ = __mul__

    def conjugate(self) -> FieldElement:
        """Image under the Frobenius z -> z^p."""
        if self.field.degree == 1:
            return self
        return FieldElement(self.field, (self.coeffs[0], (-self.coeffs[1]) % self.field.p))

    def norm(self) -> int:
        p = self.field.p
        if self.field.degree == 1:
            return self.coeffs[0]
        c0, c1 = self.coeffs
        return (c0 * c0 - self.field.nonresidue * c1 * c1) % p

    def inverse(self) -> FieldElement:
        if not self:
            raise DivisionByZero(f"0 has no inverse in {self.field!r}")
        p = self.field.p
        ninv = pow(self.norm(), -1, p)
        if self.field.degree == 1:
            return FieldElement(self.field, (ninv,))
        c0, c1 = self.coeffs
        return FieldElement(self.field, ((c0 * ninv) % p, (-c1 * ninv) % p))

    def __truediv__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> FieldElement:
        return self.inverse() * other

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


@lru_cache(maxsize=None)
def field_make(p: int, degree: int = 1) -> FiniteField:
    """Build F_p or F_{p^2} with its quadratic-character table.

    Raises:
        NonPrime: ``p`` is not prime.
        UnsupportedCharacteristic: ``p`` is 2 or 3.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p in (2, 3):
        raise UnsupportedCharacteristic(p)
    if degree not in (1, 2):
        raise ValueError("only F_p and F_{p^2} are supported")
    q = p**degree
    n = smallest_nonresidue(p) if degree == 2 else 0
    table = None
    if q <= CHI_TABLE_CUTOFF:
        idx = np.arange(q, dtype=np.int64)
        c0, c1 = idx % p, idx // p
        squares = (c0 * c0 + n * c1 * c1) % p + p * ((2 * c0 * c1) % p)
        table = np.full(q, -1, dtype=np.int8)
        table[squares] = 1
        table[0] = 0
        table.setflags(write=False)
    return FiniteField(p, degree, n, table)


def quadratic_character(z: FieldElement) -> int:
    return z.field.chi(z)


def cube_root(z: FieldElement) -> FieldElement | None:
    """Smallest (by encoding) y with y^3 = z, or None when z is not a cube.

    Raises:
        ZeroInput: z == 0.
    """
    if not z:
        raise ZeroInput("cube_root of 0")
    F = z.field
    q = F.q
    if q % 3 == 2:
        return z ** ((2 * q - 1) // 3)
    if z ** ((q - 1) // 3) != 1:
        return None
    # q - 1 = 3^s * m with 3 not dividing m
    s, m = 0, q - 1
    while m % 3 == 0:
        s, m = s + 1, m // 3
    e = pow(3, -1, m) if m > 1 else 0
    k = (3 * e - 1) // m  # z = (z^e)^3 * (z^m)^(-k)
    y = z**e
    w = z**m
    g = next(x for x in F.elements() if x and x ** ((q - 1) // 3) != 1)
    zeta = g**m
    # discrete log of w in the cyclic group <zeta> of order 3^s
    acc, dlog = F.one, None
    for i in range(3**s):
        if acc == w:
            dlog = i
            break
        acc = acc * zeta
    if dlog is None or dlog % 3:
        return None
    root = y * zeta ** (-k * (dlog // 3))
    omega = zeta ** (3 ** (s - 1))
    return min((root, root * omega, root * omega * omega), key=lambda r: r.index)

"""Exact arithmetic in Z/p^n and in the finite fields F_p, F_{p^2}.

Field elements of F_{p^2} = F_p[X]/(X^2 + c1 X + c0) are encoded as the
integer a + b*p for the class of a + b*X.  The same encoding is used by
the numba kernels, which receive the add/mul tables of the field.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class AtLeast:
    """Valuation sentinel: the element is zero mod p^n, so val >= n."""

    n: int

    def __repr__(self):
        return f">={self.n}"


@dataclass(frozen=True)
class ResidueRing:
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n < 1:
            raise ValueError("exponent must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def __call__(self, value: int) -> "ResidueElem":
        return ResidueElem(value % self.modulus, self)

    def val(self, value: int):
        """Valuation of an integer read mod p^n."""
        value %= self.modulus
        if value == 0:
            return AtLeast(self.n)
        k = 0
        while value % self.p == 0:
            value //= self.p
            k += 1
        return k


@dataclass(frozen=True)
class ResidueElem:
    value: int
    ring: ResidueRing

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            if other.ring != self.ring:
                raise ValueError("elements of different rings")
            return other.value
        return int(other)

    def __add__(self, other):
        return self.ring(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ring(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self.ring(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self.ring(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self.ring(-self.value)

    def is_unit(self) -> bool:
        return self.value % self.ring.p != 0

    def inverse(self) -> "ResidueElem":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.value} is not a unit mod {self.ring.modulus}")
        return self.ring(pow(self.value, -1, self.ring.modulus))

    def val(self):
        return self.ring.val(self.value)


def val(x: ResidueElem):
    return x.val()


def least_nonresidue(p: int) -> int:
    for d in range(2, p):
        if pow(d, (p - 1) // 2, p) == p - 1:
            return d
    raise ValueError(f"no non-residue mod {p}")


class FqField:
    """F_p (f = 1) or F_{p^2} (f = 2) with a fixed monic quadratic modulus.

    For odd p the modulus is X^2 - delta with delta the least quadratic
    non-residue, so X plays the role of sqrt(delta).  For p = 2 it is
    X^2 + X + 1.
    """

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f not in (1, 2):
            raise ValueError("only extension degrees 1 and 2 are supported")
        self.p = p
        self.f = f
        self.q = p ** f
        if f == 2:
            if p == 2:
                self.c0, self.c1 = 1, 1
                self.delta = None
            else:
                self.delta = least_nonresidue(p)
                self.c0, self.c1 = (-self.delta) % p, 0
        else:
            self.c0 = self.c1 = None
            self.delta = None

    def __repr__(self):
        return f"FqField(p={self.p}, f={self.f})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    @property
    def modulus(self):
        """Coefficients (c0, c1, 1) of the modulus polynomial, or None for f = 1."""
        if self.f == 1:
            return None
        return (self.c0, self.c1, 1)

    # -- raw code arithmetic -------------------------------------------------
    def split(self, c: int):
        return c % self.p, c // self.p

    def join(self, a: int, b: int = 0) -> int:
        return a % self.p + (b % self.p) * self.p if self.f == 2 else a % self.p

    def add(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x + y) % self.p
        (a, b), (c, d) = self.split(x), self.split(y)
        return self.join(a + c, b + d)

    def neg(self, x: int) -> int:
        if self.f == 1:
            return (-x) % self.p
        a, b = self.split(x)
        return self.join(-a, -b)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x * y) % self.p
        (a, b), (c, d) = self.split(x), self.split(y)
        # X^2 = -c1 X - c0
        bd = b * d
        return self.join(a * c - self.c0 * bd, a * d + b * c - self.c1 * bd)

    def power(self, x: int, k: int) -> int:
        result, base = 1, x
        if k < 0:
            base, k = self.inv(x), -k
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.power(x, self.q - 2)

    def frobenius(self, x: int) -> int:
        return self.power(x, self.p)

    def conj(self, x: int) -> int:
        """The nontrivial automorphism x -> x^p of F_{p^2} (identity for f = 1)."""
        return x if self.f == 1 else self.frobenius(x)

    def norm_trace(self, x: int):
        if self.f != 2:
            raise ValueError("norm and trace need a quadratic extension")
        y = self.conj(x)
        return self.mul(x, y), self.add(x, y)

    def elements(self):
        return range(self.q)

    def subfield(self):
        """Codes of the prime field inside this field."""
        return list(range(self.p))

    # -- tables for kernels --------------------------------------------------
    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(x) for x in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(x) for x in range(1, self.q)], dtype=np.int64)

    @cached_property
    def conj_table(self) -> np.ndarray:
        return np.array([self.conj(x) for x in range(self.q)], dtype=np.int64)

    def _table(self, op) -> np.ndarray:
        if self.q > 2500:
            raise ValueError("field too large for dense tables")
        t = np.empty((self.q, self.q), dtype=np.int64)
        for x in range(self.q):
            for y in range(self.q):
                t[x, y] = op(x, y)
        return t

    def __call__(self, a: int, b: int = 0) -> "FqElem":
        return FqElem(self.join(a, b), self)


@dataclass(frozen=True)
class FqElem:
    code: int
    field: FqField

    def _c(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.join(int(other))

    def __add__(self, other):
        return FqElem(self.field.add(self.code, self._c(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field.sub(self.code, self._c(other)), self.field)

    def __rsub__(self, other):
        return FqElem(self.field.sub(self._c(other), self.code), self.field)

    def __mul__(self, other):
        return FqElem(self.field.mul(self.code, self._c(other)), self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FqElem(self.field.neg(self.code), self.field)

    def __truediv__(self, other):
        return FqElem(self.field.mul(self.code, self.field.inv(self._c(other))), self.field)

    def __pow__(self, k: int):
        return FqElem(self.field.power(self.code, k), self.field)

    def __bool__(self):
        return self.code != 0

    def inverse(self):
        return FqElem(self.field.inv(self.code), self.field)

    def conj(self):
        return FqElem(self.field.conj(self.code), self.field)

    def frobenius(self):
        return FqElem(self.field.frobenius(self.code), self.field)


def fq_norm_trace(x: FqElem):
    n, t = x.field.norm_trace(x.code)
    return FqElem(n, x.field), FqElem(t, x.field)

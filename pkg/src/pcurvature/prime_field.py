"""Prime fields F_p and their extensions F_p[t]/(m).

Elements are immutable values. Extension-field arithmetic is delegated to the dense
F_p[t] routines of :mod:`sympy.polys.galoistools`; elements keep the galoistools
representation (coefficient tuple, highest degree first, no leading zeros).
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from functools import cache
from typing import Iterator, Union

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_from_int_poly,
    gf_gcd,
    gf_gcdex,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)

from pcurvature.exceptions import EvenPrime, NotPrime, ZeroInverse

logger = logging.getLogger(__name__)


def _dense(values) -> tuple[int, ...]:
    return tuple(int(c) for c in values)


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for an odd prime p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise NotPrime(f"{self.p} is not a prime")
        if self.p == 2:
            raise EvenPrime("characteristic 2 is not supported")

    is_prime_field = True

    @property
    def degree(self) -> int:
        return 1

    @property
    def order(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> FieldElem:
        return FieldElem(0, self)

    @property
    def one(self) -> FieldElem:
        return FieldElem(1, self)

    def __call__(self, value: Union[int, FieldElem]) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.field != self:
                raise TypeError(f"element of F_{value.field.p} used in F_{self.p}")
            return value
        return FieldElem(int(value) % self.p, self)

    def elements(self) -> Iterator[FieldElem]:
        for value in range(self.p):
            yield FieldElem(value, self)

    def random(self, rng: random.Random) -> FieldElem:
        return FieldElem(rng.randrange(self.p), self)

    def pth_root(self, a: FieldElem) -> FieldElem:
        # Frobenius is the identity on F_p
        return a

    def __str__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True)
class FieldElem:
    """Element of F_p, stored by its canonical representative in [0, p)."""

    value: int
    field: PrimeField

    def _coerce(self, other) -> FieldElem | None:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise TypeError("elements of different prime fields")
            return other
        if isinstance(other, int):
            return FieldElem(other % self.field.p, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem((self.value + o.value) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem((self.value - o.value) % self.field.p, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem((o.value - self.value) % self.field.p, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem((self.value * o.value) % self.field.p, self.field)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value % self.field.p, self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * field_inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * field_inv(self)

    def __pow__(self, n: int) -> FieldElem:
        if n < 0:
            return field_inv(self) ** (-n)
        return FieldElem(pow(self.value, n, self.field.p), self.field)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> FieldElem:
        return field_inv(self)

    def __repr__(self) -> str:
        return f"{self.value} mod {self.field.p}"

    def __str__(self) -> str:
        return str(self.value)


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Distinct-degree irreducibility test.

    Args:
        modulus: monic polynomial over F_p, coefficients lowest degree first
        p: the characteristic

    Returns:
        True iff gcd(t^(p^i) - t, modulus) = 1 for every i <= k/2.
    """
    k = len(modulus) - 1
    if k < 1:
        return False
    m = gf_from_int_poly(list(reversed(modulus)), p)
    t = [1, 0]
    h = t
    for _ in range(k // 2):
        h = gf_pow_mod(h, p, m, p, ZZ)
        if gf_gcd(m, gf_sub(h, t, p, ZZ), p, ZZ) != [1]:
            return False
    return True


@cache
def find_irreducible(field: PrimeField, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree k over F_p.

    Candidates are compared on their coefficients taken lowest degree first.

    Returns:
        The coefficients (c_0, ..., c_{k-1}, 1).
    """
    if k < 1:
        raise ValueError(f"extension degree must be positive, got {k}")
    if k == 1:
        return (0, 1)
    # t divides every candidate with c_0 = 0
    for c0 in range(1, field.p):
        for middle in itertools.product(range(field.p), repeat=k - 1):
            candidate = (c0, *middle, 1)
            if is_irreducible(candidate, field.p):
                logger.debug(f"find_irreducible(p={field.p}, k={k}) -> {candidate}")
                return candidate
    raise AssertionError("irreducible polynomials exist in every degree")


@dataclass(frozen=True)
class ExtField:
    """F_{p^k} presented as F_p[t]/(modulus).

    Attributes:
        base: the prime field
        modulus: monic irreducible polynomial, coefficients lowest degree first
    """

    base: PrimeField
    modulus: tuple[int, ...]

    def __post_init__(self):
        modulus = tuple(int(c) % self.base.p for c in self.modulus)
        object.__setattr__(self, "modulus", modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not is_irreducible(modulus, self.base.p):
            raise ValueError(f"modulus {modulus} is reducible over F_{self.base.p}")

    is_prime_field = False

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def k(self) -> int:
        return len(self.modulus) - 1

    @property
    def degree(self) -> int:
        return self.k

    @property
    def order(self) -> int:
        return self.base.p**self.k

    @property
    def characteristic(self) -> int:
        return self.base.p

    @property
    def gf_modulus(self) -> list[int]:
        return list(reversed(self.modulus))

    @property
    def zero(self) -> ExtElem:
        return ExtElem((), self)

    @property
    def one(self) -> ExtElem:
        return ExtElem((1,), self)

    @property
    def gen(self) -> ExtElem:
        """The class of t."""
        return self.from_coeffs([0, 1])

    def __call__(self, value) -> ExtElem:
        if isinstance(value, ExtElem):
            if value.field != self:
                raise TypeError("element of another extension field; embed it explicitly")
            return value
        if isinstance(value, FieldElem):
            value = value.value
        value = int(value) % self.p
        return ExtElem((value,) if value else (), self)

    def from_coeffs(self, coeffs) -> ExtElem:
        """Element from coefficients given lowest degree first (reduced mod the modulus)."""
        rep = gf_from_int_poly([int(c) for c in reversed(list(coeffs))], self.p)
        if len(rep) > self.k:
            rep = gf_rem(rep, self.gf_modulus, self.p, ZZ)
        return ExtElem(_dense(rep), self)

    def elements(self) -> Iterator[ExtElem]:
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield self.from_coeffs(coeffs)

    def random(self, rng: random.Random) -> ExtElem:
        return self.from_coeffs([rng.randrange(self.p) for _ in range(self.k)])

    def pth_root(self, a: ExtElem) -> ExtElem:
        # a^(1/p) = a^(p^(k-1))
        return a ** (self.p ** (self.k - 1))

    def __str__(self) -> str:
        return f"F_{self.p}^{self.k}"


@dataclass(frozen=True)
class ExtElem:
    """Element of an extension field, in galoistools dense form."""

    rep: tuple[int, ...]
    field: ExtField

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients lowest degree first, padded to the extension degree."""
        low = tuple(reversed(self.rep))
        return low + (0,) * (self.field.k - len(low))

    def _coerce(self, other) -> ExtElem | None:
        if isinstance(other, ExtElem):
            if other.field != self.field:
                raise TypeError("elements of different extension fields")
            return other
        if isinstance(other, (int, FieldElem)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(_dense(gf_add(list(self.rep), list(o.rep), self.field.p, ZZ)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(_dense(gf_sub(list(self.rep), list(o.rep), self.field.p, ZZ)), self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.rep or not o.rep:
            return self.field.zero
        p = self.field.p
        product = gf_mul(list(self.rep), list(o.rep), p, ZZ)
        if len(product) > self.field.k:
            product = gf_rem(product, self.field.gf_modulus, p, ZZ)
        return ExtElem(_dense(product), self.field)

    __rmul__ = __mul__

    def __neg__(self) -> ExtElem:
        return ExtElem(_dense(gf_neg(list(self.rep), self.field.p, ZZ)), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * field_inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * field_inv(self)

    def __pow__(self, n: int) -> ExtElem:
        if n < 0:
            return field_inv(self) ** (-n)
        if n == 0:
            return self.field.one
        if not self.rep:
            return self
        p = self.field.p
        return ExtElem(
            _dense(gf_pow_mod(list(self.rep), n, self.field.gf_modulus, p, ZZ)), self.field
        )

    def __bool__(self) -> bool:
        return bool(self.rep)

    @property
    def is_zero(self) -> bool:
        return not self.rep

    @property
    def in_prime_field(self) -> bool:
        return len(self.rep) <= 1

    def inverse(self) -> ExtElem:
        return field_inv(self)

    def __repr__(self) -> str:
        return f"{self} in {self.field}"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "t" if i == 1 else f"t^{i}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(reversed(terms)) if terms else "0"


Elem = Union[FieldElem, ExtElem]
Field = Union[PrimeField, ExtField]


def field_inv(a: Elem) -> Elem:
    """Multiplicative inverse.

    Raises:
        ZeroInverse: if a is zero.
    """
    if a.is_zero:
        raise ZeroInverse(f"inverse of zero in {a.field}")
    if isinstance(a, FieldElem):
        return FieldElem(pow(a.value, -1, a.field.p), a.field)
    s, _, h = gf_gcdex(list(a.rep), a.field.gf_modulus, a.field.p, ZZ)
    # h is the monic gcd, 1 since the modulus is irreducible
    assert h == [1], h
    return ExtElem(_dense(s), a.field)


def frobenius(a: Elem) -> Elem:
    """a^p."""
    return a ** a.field.characteristic


@cache
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


@cache
def ext_field(p: int, k: int) -> ExtField | PrimeField:
    """The standard F_{p^k}, built on the lexicographically least modulus.

    Fields are constructed lazily and cached per (p, k); k = 1 gives the prime field.
    """
    base = prime_field(p)
    if k == 1:
        return base
    logger.info(f"constructing F_{p}^{k}")
    return ExtField(base, find_irreducible(base, k))

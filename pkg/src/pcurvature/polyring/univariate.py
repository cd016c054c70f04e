"""Dense univariate polynomials over F_p or F_{p^k}.

Over the prime field the heavy lifting (division, gcd, squarefree decomposition,
distinct- and equal-degree factorization) is done by :mod:`sympy.polys.galoistools`.
Over extension fields the same algorithms run generically on :class:`UPoly`.
"""

from __future__ import annotations

import logging
import random
from functools import cache
from typing import Iterable, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_div,
    gf_edf_zassenhaus,
    gf_gcd,
    gf_mul,
    gf_pow_mod,
    gf_sqf_list,
)

from pcurvature import settings
from pcurvature.exceptions import ZeroPolynomial
from pcurvature.prime_field import (
    Elem,
    ExtElem,
    ExtField,
    Field,
    FieldElem,
    PrimeField,
    frobenius,
    prime_field,
)

logger = logging.getLogger(__name__)


class UPoly:
    """Polynomial in one variable, coefficients lowest degree first, no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable):
        values = [field(c) for c in coeffs]
        while values and values[-1].is_zero:
            values.pop()
        self.field = field
        self.coeffs: tuple[Elem, ...] = tuple(values)

    # construction ------------------------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> UPoly:
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> UPoly:
        return cls(field, (field.one,))

    @classmethod
    def t(cls, field: Field) -> UPoly:
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_gf(cls, field: PrimeField, rep: Sequence[int]) -> UPoly:
        return cls(field, [int(c) for c in reversed(rep)])

    @classmethod
    def from_roots(cls, field: Field, roots: Iterable) -> UPoly:
        result = cls.one(field)
        for r in roots:
            result = result * cls(field, (-field(r), field.one))
        return result

    def to_gf(self) -> list[int]:
        if not self.field.is_prime_field:
            raise TypeError("galoistools form exists for prime-field coefficients only")
        return [c.value for c in reversed(self.coeffs)]

    def ints(self) -> list[int]:
        """Canonical integer coefficients, lowest degree first (prime field only)."""
        return [c.value for c in self.coeffs]

    # basic properties ------------------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Elem:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def _gf(self) -> bool:
        return self.field.is_prime_field

    def __getitem__(self, i: int) -> Elem:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"UPoly({self.render()} over {self.field})"

    def render(self, var: str = "t") -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            text = str(c)
            if isinstance(c, ExtElem) and " " in text:
                text = f"({text})"
            if i == 0:
                terms.append(text)
            else:
                power = var if i == 1 else f"{var}^{i}"
                terms.append(power if text == "1" else f"{text}*{power}")
        return " + ".join(terms) if terms else "0"

    # ring operations -----------------------------------------------------------------------

    def __add__(self, other: UPoly) -> UPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other: UPoly) -> UPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self) -> UPoly:
        return UPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return UPoly.zero(self.field)
        if self._gf:
            p = self.field.p
            return UPoly.from_gf(self.field, gf_mul(self.to_gf(), other.to_gf(), p, ZZ))
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, c) -> UPoly:
        c = self.field(c)
        return UPoly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> UPoly:
        result, base = UPoly.one(self.field), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation at an element of the coefficient field or an extension of it."""
        acc = x * 0 if not isinstance(x, int) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> UPoly:
        if self.is_zero:
            return self
        return self.scale(self.lc.inverse())

    def derivative(self) -> UPoly:
        return UPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __divmod__(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self._gf:
            q, r = gf_div(self.to_gf(), other.to_gf(), self.field.p, ZZ)
            return UPoly.from_gf(self.field, q), UPoly.from_gf(self.field, r)
        rem = list(self.coeffs)
        dg = other.degree
        inv_lc = other.lc.inverse()
        quo = [self.field.zero] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i] * inv_lc
            if c.is_zero:
                continue
            quo[i - dg] = c
            for j, b in enumerate(other.coeffs):
                rem[i - dg + j] = rem[i - dg + j] - c * b
        return UPoly(self.field, quo), UPoly(self.field, rem[:dg])

    def __floordiv__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UPoly) -> UPoly:
        return divmod(self, other)[1]

    def divides(self, other: UPoly) -> bool:
        return (other % self).is_zero

    def powmod(self, n: int, modulus: UPoly) -> UPoly:
        if self._gf:
            p = self.field.p
            rep = gf_pow_mod(self.to_gf(), n, modulus.to_gf(), p, ZZ)
            return UPoly.from_gf(self.field, rep)
        result, base = UPoly.one(self.field) % modulus, self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def pth_root(self) -> UPoly:
        """h with h(t)^p = self, assuming self is a polynomial in t^p."""
        p = self.field.characteristic
        return UPoly(self.field, [self.field.pth_root(c) for c in self.coeffs[::p]])

    def map_coeffs(self, fn, field: Field) -> UPoly:
        return UPoly(field, [fn(c) for c in self.coeffs])


def upoly_gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    if f.field != g.field:
        raise TypeError("coefficient fields differ")
    if f._gf:
        return UPoly.from_gf(f.field, gf_gcd(f.to_gf(), g.to_gf(), f.field.p, ZZ))
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def squarefree_decomposition(f: UPoly) -> list[tuple[UPoly, int]]:
    """Monic squarefree factors with multiplicities: f = lc * prod(g_i ** m_i).

    Inseparable parts (f' = 0) are handled by descending to the p-th root.

    Raises:
        ZeroPolynomial: if f is zero.
    """
    if f.is_zero:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if f._gf:
        _, factors = gf_sqf_list(f.to_gf(), f.field.p, ZZ)
        return [(UPoly.from_gf(f.field, g), m) for g, m in factors]
    p = f.field.characteristic
    f = f.monic()
    factors: list[tuple[UPoly, int]] = []
    n = 1
    while f.degree > 0:
        df = f.derivative()
        if df.is_zero:
            f, n = f.pth_root(), n * p
            continue
        g = upoly_gcd(f, df)
        h = f // g
        i = 1
        while h.degree > 0:
            common = upoly_gcd(g, h)
            part = h // common
            if part.degree > 0:
                factors.append((part.monic(), i * n))
            g, h, i = g // common, common, i + 1
        if g.degree < 1:
            break
        f, n = g.pth_root(), n * p
    return factors


def squarefree_part(f: UPoly) -> UPoly:
    """Product of the distinct monic irreducible factors of f.

    Raises:
        ZeroPolynomial: if f is zero.
    """
    result = UPoly.one(f.field)
    for g, _ in squarefree_decomposition(f):
        result = result * g
    return result


def count_distinct_roots_closure(f: UPoly) -> int:
    """Number of distinct roots of f in the algebraic closure."""
    return squarefree_part(f).degree


def distinct_degree_factorization(f: UPoly) -> list[tuple[UPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree d."""
    if f._gf:
        parts = gf_ddf_zassenhaus(f.to_gf(), f.field.p, ZZ)
        return [(UPoly.from_gf(f.field, g), d) for g, d in parts]
    q = f.field.order
    t = UPoly.t(f.field)
    result = []
    h, g, i = t, f, 1
    while 2 * i <= g.degree:
        h = h.powmod(q, g)
        d = upoly_gcd(g, h - t)
        if d.degree > 0:
            result.append((d, i))
            g = g // d
            h = h % g
        i += 1
    if g.degree > 0:
        result.append((g, g.degree))
    return result


def _split(f: UPoly, d: int, rng: random.Random) -> tuple[UPoly, UPoly]:
    """One Cantor-Zassenhaus split of a product of degree-d irreducibles (odd q)."""
    field = f.field
    exponent = (field.order**d - 1) // 2
    while True:
        a = UPoly(field, [field.random(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = upoly_gcd(f, a)
        if 0 < g.degree < f.degree:
            return g, f // g
        b = a.powmod(exponent, f) - UPoly.one(field)
        g = upoly_gcd(f, b)
        if 0 < g.degree < f.degree:
            return g, f // g


def equal_degree_factorization(f: UPoly, d: int, rng: random.Random | None = None) -> list[UPoly]:
    """Irreducible monic factors of a product of distinct degree-d irreducibles."""
    if f.degree <= d:
        return [f.monic()]
    if f._gf:
        factors = gf_edf_zassenhaus(f.to_gf(), d, f.field.p, ZZ)
        return sorted((UPoly.from_gf(f.field, g) for g in factors), key=lambda u: u.ints())
    rng = rng or random.Random(settings.DEFAULT_SEED)
    left, right = _split(f, d, rng)
    return equal_degree_factorization(left, d, rng) + equal_degree_factorization(right, d, rng)


def irreducible_factors(f: UPoly, rng: random.Random | None = None) -> list[tuple[UPoly, int]]:
    """Monic irreducible factors of f with multiplicities."""
    result = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree_factorization(g):
            for factor in equal_degree_factorization(h, d, rng):
                result.append((factor, m))
    return result


def find_root(f: UPoly, rng: random.Random | None = None) -> Elem:
    """One root of a squarefree f that splits into linear factors over its field."""
    rng = rng or random.Random(settings.DEFAULT_SEED)
    f = f.monic()
    while f.degree > 1:
        left, right = _split(f, 1, rng)
        f = left if left.degree <= right.degree else right
        f = f.monic()
    if f.degree != 1:
        raise ZeroPolynomial("no root: polynomial is constant")
    return -f.coeffs[0]


def residue_field(modulus: UPoly) -> PrimeField | ExtField:
    """F_p[t]/(modulus) for a monic irreducible modulus over F_p."""
    if modulus.degree == 1:
        return modulus.field
    return _residue_field(modulus.field, tuple(modulus.ints()))


@cache
def _residue_field(base: PrimeField, modulus: tuple[int, ...]) -> ExtField:
    return ExtField(base, modulus)


def orbit(x: Elem) -> list[Elem]:
    """x, x^p, x^(p^2), ... up to the first repetition."""
    result = [x]
    y = frobenius(x)
    while y != x:
        result.append(y)
        y = frobenius(y)
    return result


def roots_in_ext(f: UPoly) -> list[tuple[Elem, int]]:
    """All roots of f (over F_p) with multiplicities.

    Each irreducible factor q of degree d contributes the d roots t, t^p, ... of
    its residue field F_p[t]/(q); linear factors give roots in F_p.

    Raises:
        ZeroPolynomial: if f is zero.
    """
    if f.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial")
    if not f._gf:
        raise TypeError("roots_in_ext expects prime-field coefficients")
    result = []
    for q, m in irreducible_factors(f):
        if q.degree == 1:
            result.append((-q.coeffs[0], m))
            continue
        field = residue_field(q)
        result.extend((root, m) for root in orbit(field.gen))
    return result


def field_embedding(source: Field, target: Field):
    """A field homomorphism source -> target, as a callable on elements.

    The generator of ``source`` is sent to a root of its modulus in ``target``.
    """
    if source == target:
        return lambda x: x
    if source.is_prime_field:
        return lambda x: target(x.value if isinstance(x, FieldElem) else x)
    if target.degree % source.degree:
        raise ValueError(f"{source} does not embed in {target}")
    modulus = UPoly(target, source.modulus)
    image = find_root(modulus)
    powers = [target.one]
    for _ in range(source.degree - 1):
        powers.append(powers[-1] * image)

    def embed(x):
        acc = target.zero
        for c, power in zip(x.coeffs, powers):
            if c:
                acc = acc + power * c
        return acc

    return embed


def upoly_from_ints(p: int, coeffs: Sequence[int]) -> UPoly:
    return UPoly(prime_field(p), coeffs)

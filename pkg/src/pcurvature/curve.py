"""The genus-2 curve y^2 = g(x) and its function ring.

Symbolic and numeric curves share one code path: both live in a sympy ring over F_p whose
last generator is ``x``. A symbolic curve carries a1..a5 as generators, a numeric one has
them as constants. Extra generators (the connection parameters u0, u1, u2 by default)
sit between the two so a single ring holds every expression the pipelines produce.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sympy.polys.rings import PolyElement, PolyRing

from pcurvature.exceptions import DegenerateInput, EvenIndex, SingularCurve
from pcurvature.nc_expand import check_odd_prime
from pcurvature.polyring import (
    MPoly,
    UPoly,
    VarSet,
    coefficient_list,
    degree_in,
    diff,
    squarefree_decomposition,
    to_upoly,
)
from pcurvature.polyring.multivariate import coeff_int, names_of
from pcurvature.prime_field import prime_field

logger = logging.getLogger(__name__)

A_NAMES = ("a1", "a2", "a3", "a4", "a5")
U_NAMES = ("u0", "u1", "u2")


def quintic_coefficients(p: int, a: Sequence[int]) -> tuple[int, ...]:
    """Reduce the five quintic coefficients a1..a5 into 0..p-1.

    Args:
        p (int): The characteristic.
        a (Sequence[int]): Coefficients a1..a5 of g, any integers.

    Returns:
        tuple[int, ...]: The five coefficients modulo p.

    Raises:
        DegenerateInput: If ``a`` does not hold exactly five values.
    """
    if len(a) != 5:
        raise DegenerateInput(f"a quintic needs five coefficients a1..a5, got {len(a)}")
    return tuple(int(c) % p for c in a)


def quintic_upoly(p: int, a: Sequence[int]) -> UPoly:
    a = quintic_coefficients(p, a)
    return UPoly(prime_field(p), [a[4], a[3], a[2], a[1], a[0], 1])


def root_multiplicities(p: int, a: Sequence[int]) -> list[int]:
    """Multiplicities of the distinct roots of g over the algebraic closure, as a multiset."""
    counts = []
    for factor, k in squarefree_decomposition(quintic_upoly(p, a)):
        counts.extend([k] * factor.degree)
    return sorted(counts)


def is_smooth(p: int, a: Sequence[int]) -> bool:
    """Whether g = x^5 + a1 x^4 + ... + a5 is squarefree over F_p.

    Args:
        p (int): The characteristic.
        a (Sequence[int]): Coefficients a1..a5 of g.

    Returns:
        bool: True when every root of g is simple.
    """
    return root_multiplicities(p, a) == [1] * 5


def is_nodal(p: int, a: Sequence[int]) -> bool:
    """Whether g has a double root and no root of higher multiplicity."""
    multiplicities = root_multiplicities(p, a)
    return max(multiplicities) == 2


@dataclass(frozen=True)
class Curve:
    """y^2 = x^5 + a1 x^4 + a2 x^3 + a3 x^2 + a4 x + a5 in characteristic p."""

    p: int
    ring: PolyRing = field(repr=False)
    a: tuple[MPoly, ...] = field(repr=False)
    coefficients: tuple[int, ...] | None = None
    params: tuple[str, ...] = U_NAMES
    nodal: bool = False

    @classmethod
    def symbolic(cls, p: int, params: Iterable[str] = U_NAMES) -> Curve:
        check_odd_prime(p)
        params = tuple(params)
        R = VarSet((*A_NAMES, *params, "x")).ring(p)
        return cls(p, R, tuple(R.gens[:5]), None, params)

    @classmethod
    def numeric(
        cls,
        p: int,
        a: Sequence[int],
        params: Iterable[str] = U_NAMES,
        nodal: bool = False,
    ) -> Curve:
        """A curve over F_p.

        Raises:
            SingularCurve: if g has a repeated root (or, with ``nodal``, a root of
                multiplicity above 2).
        """
        check_odd_prime(p)
        coefficients = quintic_coefficients(p, a)
        multiplicities = root_multiplicities(p, coefficients)
        allowed = 2 if nodal else 1
        if max(multiplicities) > allowed:
            kind = "non-nodal singular" if nodal else "singular"
            raise SingularCurve(f"g with a = {list(coefficients)} is {kind} over F_{p}")
        params = tuple(params)
        R = VarSet((*params, "x")).ring(p)
        return cls(p, R, tuple(R(c) for c in coefficients), coefficients, params, nodal)

    @property
    def is_symbolic(self) -> bool:
        return self.coefficients is None

    @property
    def x_index(self) -> int:
        return self.ring.ngens - 1

    @property
    def x(self) -> MPoly:
        return self.ring.gens[-1]

    @property
    def param_gens(self) -> tuple[MPoly, ...]:
        """Generators of the connection parameters, u0, u1, u2 by default."""
        offset = 0 if self.coefficients is not None else 5
        return tuple(self.ring.gens[offset : offset + len(self.params)])

    @property
    def param_indices(self) -> tuple[int, ...]:
        offset = 0 if self.coefficients is not None else 5
        return tuple(range(offset, offset + len(self.params)))

    @cached_property
    def inv2(self) -> int:
        return pow(2, -1, self.p)

    @cached_property
    def g(self) -> MPoly:
        x = self.x
        a1, a2, a3, a4, a5 = self.a
        return x**5 + a1 * x**4 + a2 * x**3 + a3 * x**2 + a4 * x + a5

    @cached_property
    def dg(self) -> MPoly:
        return self.dx(self.g)

    @cached_property
    def _g_cache(self) -> dict[int, MPoly]:
        return {1: self.x}

    def dx(self, f: MPoly) -> MPoly:
        return diff(f, self.x_index)

    def x_coefficients(self, f: MPoly) -> list[MPoly]:
        """Coefficients of f in x, lowest degree first."""
        return coefficient_list(f, self.x_index)

    def x_degree(self, f: MPoly) -> int:
        return degree_in(f, self.x_index)

    def g_upoly(self) -> UPoly:
        if self.is_symbolic:
            raise DegenerateInput("a symbolic curve has no numeric g")
        return to_upoly(self.g, self.x_index, prime_field(self.p))

    def from_generic(self, f: MPoly) -> MPoly:
        """Image in this ring of a polynomial over a1..a5, the parameters and x.

        A numeric curve evaluates the a_i at its coefficients; other names map by name.
        """
        target = [str(s) for s in self.ring.symbols]
        values = {} if self.is_symbolic else dict(zip(A_NAMES, self.coefficients))
        terms: dict[tuple[int, ...], int] = {}
        for monom, c in f.items():
            coeff = coeff_int(c, self.p)
            exponents = [0] * self.ring.ngens
            for name, e in zip(names_of(f), monom):
                if not e:
                    continue
                if name in values:
                    coeff = coeff * pow(values[name], e, self.p) % self.p
                elif name in target:
                    exponents[target.index(name)] = e
                else:
                    raise DegenerateInput(f"{name} does not exist in the ring of {self.label()}")
            key = tuple(exponents)
            terms[key] = (terms.get(key, 0) + coeff) % self.p
        return self.ring.from_dict(terms)

    def fn(self, a: MPoly | int = 0, b: MPoly | int = 0) -> CurveFn:
        """The function a + b y on this curve, coercing both parts into its ring."""
        return CurveFn(self, self.ring(a), self.ring(b))

    @property
    def y(self) -> CurveFn:
        return self.fn(0, 1)

    def label(self) -> str:
        if self.is_symbolic:
            return f"symbolic curve over F_{self.p}"
        return f"curve a = {list(self.coefficients)} over F_{self.p}"


@dataclass(frozen=True, eq=False)
class CurveFn:
    """a(x) + b(x) y, kept reduced by y^2 = g(x)."""

    curve: Curve = field(repr=False)
    a: MPoly
    b: MPoly

    def _coerce(self, other) -> CurveFn | None:
        if isinstance(other, CurveFn):
            return other
        if isinstance(other, (int, PolyElement)):
            return self.curve.fn(other)
        return None

    def __add__(self, other) -> CurveFn:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CurveFn(self.curve, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> CurveFn:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CurveFn(self.curve, self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> CurveFn:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self) -> CurveFn:
        return CurveFn(self.curve, -self.a, -self.b)

    def __mul__(self, other) -> CurveFn:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a = self.a * other.a + self.b * other.b * self.curve.g
        b = self.a * other.b + self.b * other.a
        return CurveFn(self.curve, a, b)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CurveFn:
        result, base = self.curve.fn(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_y_free(self) -> bool:
        return not self.b

    def is_odd(self) -> bool:
        """Of the form y * (x-polynomial)."""
        return not self.a


def theta_apply(curve: Curve, f: CurveFn) -> CurveFn:
    """theta(a + b y) = (b' g + b g' / 2) + a' y, where theta = y d/dx."""
    a = curve.dx(f.b) * curve.g + f.b * curve.dg * curve.inv2
    b = curve.dx(f.a)
    return CurveFn(curve, a, b)


def theta_power(curve: Curve, f: CurveFn, k: int) -> CurveFn:
    """Apply theta k times.

    Args:
        curve (Curve): The curve whose theta = y d/dx is applied.
        f (CurveFn): The starting function a + b y.
        k (int): Number of applications, k >= 0.

    Returns:
        CurveFn: theta^k f.
    """
    for _ in range(k):
        f = theta_apply(curve, f)
    return f


def theta_iterates(curve: Curve, f: CurveFn, k: int) -> list[CurveFn]:
    """[f, theta f, ..., theta^k f]."""
    out = [f]
    for _ in range(k):
        out.append(theta_apply(curve, out[-1]))
    return out


def g_k(curve: Curve, k: int) -> MPoly:
    """theta^(k-1) x, through g_k = g''_(k-2) g + g'_(k-2) g' / 2 from g_1 = x.

    Raises:
        EvenIndex: for even k (theta^(k-1) x then carries a factor of y).
    """
    if k < 1 or k % 2 == 0:
        raise EvenIndex(f"g_k is defined for odd k >= 1, got {k}")
    cache = curve._g_cache
    top = max(cache)
    while top < k:
        prev = cache[top]
        d1 = curve.dx(prev)
        cache[top + 2] = curve.dx(d1) * curve.g + d1 * curve.dg * curve.inv2
        top += 2
    return cache[k]


def f_theta_p(curve: Curve, p: int | None = None) -> MPoly:
    """f_(theta^p) = g_p', the function with theta^p = f_(theta^p) theta."""
    p = curve.p if p is None else p
    if p != curve.p:
        raise DegenerateInput(f"f_theta^p needs p = characteristic {curve.p}, got {p}")
    return curve.dx(g_k(curve, p))


def theta_p_consistency(curve: Curve, f: CurveFn, p: int | None = None) -> bool:
    """theta^p f = f_(theta^p) theta f, and theta annihilates f_(theta^p)."""
    ftp = f_theta_p(curve, p)
    lhs = theta_power(curve, f, curve.p)
    rhs = theta_apply(curve, f) * curve.fn(ftp)
    return lhs == rhs and theta_apply(curve, curve.fn(ftp)).is_zero()


def random_curve_coefficients(
    p: int, rng: random.Random, smooth: bool = True
) -> tuple[int, ...]:
    """Uniform a1..a5 in F_p, resampled until g is squarefree when ``smooth``."""
    while True:
        a = tuple(rng.randrange(p) for _ in range(5))
        if not smooth or is_smooth(p, a):
            return a


def random_curve(p: int, rng: random.Random, params: Iterable[str] = U_NAMES) -> Curve:
    """A smooth numeric curve with uniformly drawn coefficients.

    Args:
        p (int): The characteristic.
        rng (random.Random): Source of randomness, seeded by the caller.
        params (Iterable[str]): Names of the extra generators, u0, u1, u2 by default.

    Returns:
        Curve: A curve over F_p with squarefree g.
    """
    return Curve.numeric(p, random_curve_coefficients(p, rng), params)

"""Noncommutative expansion of (T + theta)^n.

A word is a composition (i_1, ..., i_l) of positive integers standing for the operator
product (theta^(i_1 - 1) T) ... (theta^(i_l - 1) T), optionally followed by a bare
theta power. Expanding (T + theta)^n with the rule theta T = (theta T) + T theta gives
integer coefficients with a closed form; reducing them mod p at n = p leaves the
universal p-curvature formula, every one of the 2^(p-1) compositions of p appearing
with a nonzero coefficient.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Iterator

from sympy import isprime

from pcurvature import settings
from pcurvature.exceptions import BadComposition, EvenPrime, NotPrime, TooLarge
from pcurvature.polyring.multivariate import MPoly, polynomial_ring

logger = logging.getLogger(__name__)

Composition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Word:
    """(theta^(i_1 - 1) T) ... (theta^(i_l - 1) T) theta^trailing."""

    composition: Composition
    trailing: int = 0

    def __post_init__(self):
        object.__setattr__(self, "composition", tuple(self.composition))
        if any(i < 1 for i in self.composition) or self.trailing < 0:
            raise BadComposition(f"invalid word {self.composition} theta^{self.trailing}")

    @property
    def weight(self) -> int:
        return sum(self.composition) + self.trailing

    def render(self) -> str:
        text = render_composition(self.composition) if self.composition else ""
        if self.trailing:
            power = "t" if self.trailing == 1 else f"t^{self.trailing}"
            text = f"{text} {power}".strip()
        return text or "1"


@dataclass(frozen=True)
class NCPoly:
    """Linear combination of words; zero coefficients are never stored."""

    terms: dict

    def __getitem__(self, word: Word) -> int:
        return self.terms.get(word, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.terms))

    def items(self):
        return sorted(self.terms.items())

    def reduce(self, p: int) -> NCPoly:
        return NCPoly({w: c % p for w, c in self.terms.items() if c % p})

    def is_homogeneous(self) -> bool:
        return len({w.weight for w in self.terms}) <= 1


def _check_composition(n: int, word: Iterable[int]) -> Composition:
    word = tuple(word)
    if any(not isinstance(i, int) or i < 1 for i in word) or sum(word) != n:
        raise BadComposition(f"{word} is not a composition of {n}")
    return word


def compositions(n: int) -> Iterator[Composition]:
    """All compositions of n in lexicographic order."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield (first, *rest)


def expand_brute(n: int) -> NCPoly:
    """(T + theta)^n by repeated left multiplication and the commutation rule.

    Raises:
        TooLarge: beyond settings.EXPAND_BRUTE_MAX.
    """
    if n < 1 or n > settings.EXPAND_BRUTE_MAX:
        raise TooLarge(f"expand_brute supports 1 <= n <= {settings.EXPAND_BRUTE_MAX}, got {n}")
    state: Counter = Counter({((), 0): 1})
    for _ in range(n):
        step: Counter = Counter()
        for (word, trailing), c in state.items():
            step[((1, *word), trailing)] += c
            # theta passes through each factor, differentiating it, then lands at the end
            for j in range(len(word)):
                bumped = word[:j] + (word[j] + 1,) + word[j + 1 :]
                step[(bumped, trailing)] += c
            step[(word, trailing + 1)] += c
        state = step
    return NCPoly({Word(w, e): c for (w, e), c in state.items() if c})


def coeff_closed_form(n: int, word: Iterable[int]) -> int:
    """n_i = (n-1)! / (prod (i_j - 1)! * prod_{j<l} (i_1 + ... + i_j))."""
    word = _check_composition(n, word)
    if not word:
        return 1
    partial_sums = list(itertools.accumulate(word))[:-1]
    denominator = prod(factorial(i - 1) for i in word) * prod(partial_sums)
    numerator = factorial(n - 1)
    assert numerator % denominator == 0
    return numerator // denominator


def coeff_recursive(n: int, word: Iterable[int]) -> int:
    """The same coefficient through n_i = binom(n-1, i_l - 1) * n_(i without i_l)."""
    word = _check_composition(n, word)
    result = 1
    while word:
        last = word[-1]
        result *= comb(n - 1, last - 1)
        n, word = n - last, word[:-1]
    return result


def trailing_coeff(n: int, word: Iterable[int], trailing: int) -> int:
    """Coefficient of word * theta^trailing in (T + theta)^n: binom(n, e) * n_word."""
    word = _check_composition(n - trailing, word)
    return comb(n, trailing) * coeff_closed_form(n - trailing, word)


def _positions(word: Composition, lam: Iterable[int]) -> frozenset[int]:
    lam = frozenset(lam)
    if any(j < 1 or j > len(word) for j in lam):
        raise BadComposition(f"index set {sorted(lam)} outside 1..{len(word)}")
    return lam


def ordered_coeff(n: int, word: Iterable[int], lam: Iterable[int]) -> Fraction:
    """Sum of n_(sigma(i)) over permutations keeping the positions in lam in order.

    Closed form n! / (prod (i_j - 1)! * prod_j (i_j + sum_{m < j, m, j in lam} i_m)),
    positions counted from 1.
    """
    word = _check_composition(n, word)
    lam = _positions(word, lam)
    denominator = 1
    running = 0
    for j, i in enumerate(word, start=1):
        denominator *= factorial(i - 1)
        if j in lam:
            denominator *= i + running
            running += i
        else:
            denominator *= i
    return Fraction(factorial(n), denominator)


def ordered_coeff_brute(n: int, word: Iterable[int], lam: Iterable[int]) -> int:
    word = _check_composition(n, word)
    lam = _positions(word, lam)
    total = 0
    for sigma in itertools.permutations(range(len(word))):
        kept = [j for j in sigma if j + 1 in lam]
        if kept == sorted(kept):
            total += coeff_closed_form(n, tuple(word[j] for j in sigma))
    return total


def _factor_text(i: int) -> str:
    return "T" if i == 1 else f"(t{i - 1} T)"


def render_composition(word: Composition) -> str:
    """Display form of the product, runs of equal factors as powers: (1,1,2,1) -> 'T^2(t1 T)T'."""
    parts = []
    for i, run in itertools.groupby(word):
        k = len(list(run))
        parts.append(_factor_text(i) + (f"^{k}" if k > 1 else ""))
    return "".join(parts)


def check_odd_prime(p: int) -> int:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not a prime")
    if p == 2:
        raise EvenPrime("characteristic 2 is not supported")
    return p


@dataclass(frozen=True)
class PCFormula:
    """psi(theta) = sum_i n_i T_i - f_(theta^p) T, coefficients reduced mod p.

    Terms are produced lazily in lexicographic order of the compositions.
    """

    p: int

    correction = "f_(t^p) T"

    def __len__(self) -> int:
        return 2 ** (self.p - 1)

    def coefficient(self, word: Iterable[int]) -> int:
        return coeff_closed_form(self.p, word) % self.p

    def iter_terms(self) -> Iterator[tuple[int, Composition]]:
        for word in compositions(self.p):
            yield coeff_closed_form(self.p, word) % self.p, word

    def terms(self, limit: int | None = None) -> list[tuple[int, Composition]]:
        if limit is None and self.p > settings.MATRIX_PRIME_MAX:
            raise TooLarge(f"the p = {self.p} formula has {len(self)} terms; pass a limit")
        return list(itertools.islice(self.iter_terms(), limit))

    def render(self, limit: int | None = None) -> str:
        parts = []
        for c, word in self.terms(limit):
            text = render_composition(word)
            parts.append(text if c == 1 else f"{c} {text}")
        body = " + ".join(parts)
        if limit is not None and limit < len(self):
            body += " + ..."
        return f"{body} - f_(t^{self.p}) T"

    def to_json(self, limit: int | None = None) -> dict:
        return {
            "p": self.p,
            "n_terms": len(self),
            "terms": [{"coeff": c, "word": list(w)} for c, w in self.terms(limit)],
            "correction": {"coeff": self.p - 1, "term": self.correction},
        }


def pcurvature_formula(p: int) -> PCFormula:
    """The universal p-curvature formula in characteristic p.

    Raises:
        NotPrime, EvenPrime: for an unsupported characteristic.
        TooLarge: above settings.MAX_PRIME.
    """
    check_odd_prime(p)
    if p > settings.MAX_PRIME:
        raise TooLarge(f"formula generation supports p <= {settings.MAX_PRIME}")
    return PCFormula(p)


def symbol_names(p: int) -> tuple[str, ...]:
    """Commuting stand-ins F0..F(p-1) for theta^k T, plus Fp for f_(theta^p)."""
    return (*(f"F{k}" for k in range(p)), "Fp")


def word_monomial(word: Composition, nvars: int) -> tuple[int, ...]:
    exponents = [0] * nvars
    for i in word:
        exponents[i - 1] += 1
    return tuple(exponents)


def scalar_collapse(p: int) -> MPoly:
    """The formula evaluated on commuting symbols, correction term left out.

    For a rank-1 connection every cross term cancels and the result is F0^p + F(p-1).
    """
    formula = pcurvature_formula(p)
    if p > settings.MATRIX_PRIME_MAX:
        raise TooLarge(f"scalar collapse is limited to p <= {settings.MATRIX_PRIME_MAX}")
    R = polynomial_ring(symbol_names(p), p)
    terms: Counter = Counter()
    for c, word in formula.iter_terms():
        terms[word_monomial(word, R.ngens)] += c
    return R.from_dict(dict(terms))

"""Counting ramified self-maps of the projective line over the node pairs.

For eigenvalues alpha_1, alpha_2 at the two node pairs the number of maps is
min{p - 2 alpha_i, 2 alpha_i}; summed over all pairs it gives (p^3 - p) / 24, the
number of Frobenius-unstable bundles on a general curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from sympy import isprime

from pcurvature.exceptions import BadAlpha, NotOddPrime


def _check(p: int) -> int:
    if not isinstance(p, int) or p < 3 or not isprime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    return p


@dataclass(frozen=True)
class AlphaPair:
    """Eigenvalue parameters at the two node pairs, 1 <= alpha_i and 2 alpha_i < p."""

    alpha1: int
    alpha2: int

    def validate(self, p: int) -> AlphaPair:
        for a in (self.alpha1, self.alpha2):
            if a < 1 or 2 * a >= p:
                raise BadAlpha(f"alpha = {a} outside 1 <= alpha < p/2 for p = {p}")
        return self


def _local(p: int, alpha: int) -> int:
    return min(p - 2 * alpha, 2 * alpha)


def maps_for_alpha(p: int, pair: AlphaPair) -> int:
    """Number of Frobenius-unstable bundles attached to one eigenvalue pair.

    Args:
        p (int): An odd prime.
        pair (AlphaPair): The eigenvalue parameters, checked against p.

    Returns:
        int: min over i of min(p - 2 alpha_i, 2 alpha_i).
    """
    pair.validate(p)
    return min(_local(p, pair.alpha1), _local(p, pair.alpha2))


def alpha_pairs(p: int) -> Iterator[AlphaPair]:
    """Every pair with 1 <= alpha_i <= (p - 1) / 2."""
    half = (p - 1) // 2
    for a1 in range(1, half + 1):
        for a2 in range(1, half + 1):
            yield AlphaPair(a1, a2)


def total_count(p: int) -> int:
    """Sum of maps_for_alpha over every eigenvalue pair.

    Raises:
        NotOddPrime: if p is not an odd prime.
    """
    _check(p)
    return sum(maps_for_alpha(p, pair) for pair in alpha_pairs(p))


def layer_count(p: int) -> int:
    """sum over j >= 1 of #{(alpha_1, alpha_2): j <= 2 alpha_i and j <= p - 2 alpha_i}."""
    _check(p)
    total = 0
    for j in range(1, p):
        total += sum(
            1
            for pair in alpha_pairs(p)
            if all(j <= 2 * a <= p - j for a in (pair.alpha1, pair.alpha2))
        )
    return total


def square_sum(p: int) -> int:
    """The same total written as a sum of squares over 1..(p - 1) / 2."""
    _check(p)
    half = (p - 1) // 2
    return sum(((p + 1) // 2 - j) ** 2 for j in range(1, half + 1))


def closed_form(p: int) -> int:
    """(p^3 - p) / 24."""
    return (p**3 - p) // 24

"""Closed-form cohomological bookkeeping for GL_n: cuspidal range, the
admissible tempered parameters J(w, l), highest weights of symmetric-power
lifts, and the Rankin-product cohomologicality criterion.

Only the integer formulas are implemented; no Lie-theoretic computation of
the cohomology spaces themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "DominantWeight",
    "ClozelRejection",
    "cuspidal_range",
    "jwl_admissible",
    "clozel_weight",
    "rankin_cohomological",
    "rho_vector",
]


def cuspidal_range(n: int) -> tuple[int, int]:
    """Degrees (b_n, t_n) carrying cuspidal cohomology for GL_n.

    b_n = n^2/4 for even n, (n^2-1)/4 for odd n; t_n = ((n+1)^2-1)/4 - 1 for
    even n, (n+1)^2/4 - 1 for odd n.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    if n % 2 == 0:
        return n * n // 4, ((n + 1) ** 2 - 1) // 4 - 1
    return (n * n - 1) // 4, (n + 1) ** 2 // 4 - 1


def jwl_admissible(w: int, l) -> bool:
    """Whether (w, l) parametrizes a cohomological tempered J(w, l).

    Conditions: l_i = -l_{n-i+1}, strictly decreasing positive first half
    (l_1 > ... > l_{[n/2]} > 0), and w + l_i odd for every i when n is even,
    even when n is odd.
    """
    l = tuple(l)
    n = len(l)
    if n < 2:
        raise DomainError("l must have length >= 2")
    half = n // 2
    for i in range(n):
        if l[i] != -l[n - 1 - i]:
            return False
    head = l[:half]
    if any(head[i] <= head[i + 1] for i in range(half - 1)):
        return False
    if half and head[-1] <= 0:
        return False
    want_odd = n % 2 == 0
    for li in l:
        if ((w + li) % 2 == 1) != want_odd:
            return False
    return True


def rho_vector(n: int) -> tuple[Fraction, ...]:
    """Half the sum of positive roots of GL_n: (n-1)/2, (n-3)/2, ..., -(n-1)/2."""
    return tuple(Fraction(n - 1 - 2 * i, 2) for i in range(n))


@dataclass(frozen=True)
class DominantWeight:
    """mu_1 >= ... >= mu_n with the purity mu_i + mu_{n-i+1} = weight."""

    entries: tuple
    weight: object  # 2s

    @property
    def n(self) -> int:
        return len(self.entries)


class ClozelRejection(DomainError):
    """The (s, epsilon) pair fails a condition of the lift-weight theorem."""

    def __init__(self, clause: str):
        self.clause = clause
        super().__init__(clause)


def clozel_weight(n: int, k: int, s, eps: int) -> DominantWeight:
    """Highest weight mu = (k-2) rho_{n+1} + s of a cohomological Sym^n lift.

    Conditions checked (rejection names the failed clause):
      * n even: s must be an integer and eps = n(k-1)/2 (mod 2);
      * n odd: s integral for even k, half-integral for odd k; eps is free.
    On acceptance all entries of mu are integers.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if k < 2:
        raise DomainError("weight k must be >= 2")
    if eps not in (0, 1):
        raise DomainError("eps must be 0 or 1")
    s = Fraction(s)
    if n % 2 == 0:
        if s.denominator != 1:
            raise ClozelRejection("s must be an integer when n is even")
        if eps % 2 != (n * (k - 1) // 2) % 2:
            raise ClozelRejection(
                f"eps must be congruent to n(k-1)/2 = {n * (k - 1) // 2} mod 2"
            )
    else:
        if k % 2 == 0 and s.denominator != 1:
            raise ClozelRejection("s must be an integer when n is odd and k even")
        if k % 2 == 1 and s.denominator != 2:
            raise ClozelRejection("s must be a half-integer when n is odd and k odd")
    entries = tuple((k - 2) * r + s for r in rho_vector(n + 1))
    if any(e.denominator != 1 for e in entries):
        raise ClozelRejection("weight entries fail integrality")
    return DominantWeight(tuple(int(e) for e in entries), weight=2 * s)


def rankin_cohomological(k1: int, k2: int) -> bool:
    """Whether the GL_2 x GL_2 Rankin product of weights k1 >= k2 is cohomological.

    The induced parameter uses discrete series of weights k1+k2-2 and k1-k2;
    it is a J(w, l) exactly when k1+k2-2 > k1-k2 > 0, i.e. k1 > k2 >= 2.
    """
    if k1 < k2 or k2 < 1:
        raise DomainError("need k1 >= k2 >= 1")
    return k1 > k2 >= 2

"""Critical sets of symmetric-power L-functions and the period-exponent engine.

Everything here is closed-form integer bookkeeping: the critical integers of
Sym^n of a weight-k form (split by the parities of n/2 and k), zeta
criticality, the Deligne-style prediction of which powers of (2*pi*i),
c^+, c^-, delta(omega) should express a critical value, and the folding of
two predictions into a period-free ratio exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "CriticalSet",
    "DelignePrediction",
    "critical_set",
    "zeta_critical",
    "deligne_prediction",
    "ratio_exponent",
    "NON_CANCELLING",
]


@dataclass(frozen=True)
class CriticalSet:
    n: int
    k: int
    members: tuple

    @property
    def center(self) -> Fraction:
        """Center of symmetry (w+1)/2 of the functional equation."""
        return Fraction(self.n * (self.k - 1) + 1, 2)

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def critical_set(n: int, k: int) -> CriticalSet:
    """Critical integers of the n-th symmetric power in weight k.

    Odd n = 2r+1: all integers in [r(k-1)+1, (r+1)(k-1)].  Even n = 2r:
    a parity-constrained union of two arithmetic progressions around the
    center, with the progression endpoints depending on the parities of r
    and k.  Weight 1 gives the empty set.
    """
    if n < 1 or k < 1:
        raise DomainError("n and k must be positive")
    km1 = k - 1
    if n % 2 == 1:
        r = (n - 1) // 2
        members = tuple(range(r * km1 + 1, (r + 1) * km1 + 1))
        return CriticalSet(n, k, members)
    r = n // 2
    if r % 2 == 1 and k % 2 == 0:
        left = range((r - 1) * km1 + 1, r * km1 + 1, 2)
        right = range(r * km1 + 1, (r + 1) * km1 + 1, 2)
    elif r % 2 == 1 and k % 2 == 1:
        left = range((r - 1) * km1 + 1, r * km1, 2)
        right = range(r * km1 + 2, (r + 1) * km1 + 1, 2)
    elif r % 2 == 0 and k % 2 == 0:
        left = range((r - 1) * km1 + 2, r * km1, 2)
        right = range(r * km1 + 2, (r + 1) * km1, 2)
    else:  # r even, k odd
        left = range((r - 1) * km1 + 1, r * km1, 2)
        right = range(r * km1 + 2, (r + 1) * km1 + 1, 2)
    return CriticalSet(n, k, tuple(left) + tuple(right))


def zeta_critical(m: int) -> bool:
    """Criticality for the Riemann zeta function: positive even or negative odd."""
    return (m > 0 and m % 2 == 0) or (m < 0 and m % 2 == 1)


@dataclass(frozen=True)
class DelignePrediction:
    """Predicted shape (2*pi*i)^pow c+^e_plus c-^e_minus delta(omega)^e_delta."""

    n: int
    m: int
    k: int
    pow_2pii: int
    e_plus: int
    e_minus: int
    e_delta: int


def deligne_prediction(n: int, m: int, k: int) -> DelignePrediction:
    """Exponent data of the conjectural critical-value expression.

    Odd n = 2l+1: power m(l+1), with c^{sign (-1)^m} carrying (l+1)(l+2)/2,
    the other sign l(l+1)/2, and delta-exponent l(l+1)/2.  Even n = 2l:
    both c-exponents are l(l+1)/2; even m gives power m(l+1) and
    delta-exponent l(l+1)/2, odd m gives power ml and delta-exponent
    l(l-1)/2.
    """
    if m not in critical_set(n, k):
        raise DomainError(f"m = {m} is not critical for Sym^{n} in weight {k}")
    if n % 2 == 1:
        l = (n - 1) // 2
        big, small = (l + 1) * (l + 2) // 2, l * (l + 1) // 2
        if m % 2 == 0:
            e_plus, e_minus = big, small
        else:
            e_plus, e_minus = small, big
        return DelignePrediction(n, m, k, m * (l + 1), e_plus, e_minus, small)
    l = n // 2
    e_both = l * (l + 1) // 2
    if m % 2 == 0:
        return DelignePrediction(n, m, k, m * (l + 1), e_both, e_both, e_both)
    return DelignePrediction(n, m, k, m * l, e_both, e_both, l * (l - 1) // 2)


NON_CANCELLING = "periods do not cancel"


def ratio_exponent(n: int, m1: int, m2: int, k: int):
    """Fold two predictions into the exponent of (2*pi*i) on L(m1)/L(m2).

    Returns (exponent, gauss_multiplicity) when the c^+/c^- powers cancel
    (always for even n; same-parity m1, m2 for odd n), folding each delta
    factor as (2*pi*i)^(1-k) g(omega).  gauss_multiplicity is the leftover
    power of g(omega), zero whenever omega is trivial of modulus one.
    Returns NON_CANCELLING otherwise.
    """
    p1 = deligne_prediction(n, m1, k)
    p2 = deligne_prediction(n, m2, k)
    if (p1.e_plus, p1.e_minus) != (p2.e_plus, p2.e_minus):
        return NON_CANCELLING
    d_delta = p1.e_delta - p2.e_delta
    exponent = p1.pow_2pii - p2.pow_2pii + (1 - k) * d_delta
    return exponent, d_delta

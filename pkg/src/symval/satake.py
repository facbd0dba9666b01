"""Satake parameters and symmetric-power Euler-factor algebra.

At a good prime p the local parameters (alpha, beta) are the reciprocal
roots of 1 - a_p X + omega(p) p^(k-1) X^2; at p | N the convention beta = 0
is used.  Symmetric-power factors are expanded through power sums (Newton
identities) from the exact pair (alpha+beta, alpha*beta), never through the
roots themselves, so everything stays exact whenever a_p is rational and
the twist value is a rational root of unity.  The same expansion code runs
unchanged over other exact coefficient rings (quadratic integers in the
dihedral checks) and over mpmath complexes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .characters import DirichletCharacter, trivial_character
from .errors import DomainError, RangeError, StateError
from .qseries import Newform, _primes_up_to

__all__ = [
    "SatakeParams",
    "EulerFactor",
    "satake_at",
    "sym_euler_factor",
    "dirichlet_coeffs",
    "sym_local_factor_from_pair",
]


@dataclass
class SatakeParams:
    """Local data at p: exact trace/norm when available, numeric roots on demand."""

    p: int
    trace: object  # a_p (exact int/Fraction, or mpmath number)
    norm: object  # alpha*beta = omega(p) p^(k-1); 0 at bad p
    good_prime: bool

    def roots(self, precision: int = 113):
        """(alpha, beta) at the requested binary precision."""
        with mpmath.mp.workprec(precision + 10):
            t = _to_mpc(self.trace)
            nu = _to_mpc(self.norm)
            disc = t * t - 4 * nu
            r = mpmath.sqrt(disc)
            alpha = (t + r) / 2
            beta = (t - r) / 2
            return mpmath.mpc(alpha), mpmath.mpc(beta)


def _to_mpc(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpc(x) if not isinstance(x, (int,)) else mpmath.mpf(x)


@dataclass(frozen=True)
class EulerFactor:
    """Polynomial 1 + c_1 X + ... + c_d X^d in X = p^(-s)."""

    p: int
    coefficients: tuple  # c_0 .. c_d, c_0 = 1

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: "EulerFactor") -> "EulerFactor":
        if other.p != self.p:
            raise DomainError("cannot multiply local factors at different primes")
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return EulerFactor(self.p, tuple(out))

    def shift_argument(self, exponent: int) -> "EulerFactor":
        """Substitute X -> p^exponent X (the shift s -> s - exponent)."""
        q = self.p**exponent
        return EulerFactor(
            self.p, tuple(c * q**i for i, c in enumerate(self.coefficients))
        )

    def series_inverse(self, length: int) -> list:
        """Coefficients b_0..b_{length-1} of 1/self as a power series in X."""
        c = self.coefficients
        b = [1] + [0] * (length - 1)
        for m in range(1, length):
            s = 0
            for j in range(1, min(m, self.degree) + 1):
                s = s + c[j] * b[m - j]
            b[m] = -s
        return b


def satake_at(f: Newform, p: int, precision: int = 113) -> SatakeParams:
    """Satake parameters of f at p from a_p and the nebentypus.

    Requires a validated form and p within the stored coefficient range.
    """
    if not f.is_validated:
        raise StateError("form must be Hecke-validated before Satake extraction")
    if p > f.coefficient_count:
        raise RangeError(f"a_{p} not stored (have {f.coefficient_count})", needed=p)
    ap = f.a(p)
    if f.level % p == 0:
        return SatakeParams(p=p, trace=ap, norm=0, good_prime=False)
    t = f.nebentypus.value_exact(p)
    if t is None:
        # modulus shares a factor with p but p does not divide the level:
        # cannot happen since the modulus divides the level
        raise DomainError(f"nebentypus undefined at good prime {p}")
    if t.denominator <= 2:
        w = 1 if t == 0 else -1
        norm = w * p ** (f.weight - 1)
    else:
        with mpmath.mp.workprec(precision + 10):
            norm = f.nebentypus.value(p, precision) * mpmath.mpf(p) ** (f.weight - 1)
    return SatakeParams(p=p, trace=ap, norm=norm, good_prime=True)


def _power_sums(trace, norm, j_max: int) -> list:
    """s_j = alpha^j + beta^j for j = 0..j_max via the Newton recurrence."""
    s = [2, trace]
    for _ in range(2, j_max + 1):
        s.append(trace * s[-1] - norm * s[-2])
    return s[: j_max + 1]


def sym_local_factor_from_pair(p: int, trace, norm, n: int, twist=1) -> EulerFactor:
    """Degree-(n+1) symmetric-power factor from (alpha+beta, alpha*beta).

    The reciprocal roots are gamma_i = alpha^i beta^(n-i); their power sums
    Q_j = h_n(alpha^j, beta^j) satisfy the two-variable complete-homogeneous
    recurrence h_m = s_j h_{m-1} - nu^j h_{m-2}, and Newton's identities then
    give the elementary symmetric functions.  Division by integers happens
    through Fractions, so exact inputs give exact outputs.
    """
    if n < 1:
        raise DomainError("symmetric power n must be >= 1")
    s = _power_sums(trace, norm, n + 1)
    nu_pow = [1]
    for _ in range(n + 1):
        nu_pow.append(nu_pow[-1] * norm)
    Q = []  # Q[j-1] = sum_i gamma_i^j, j = 1..n+1
    for j in range(1, n + 2):
        sj, nuj = s[j], nu_pow[j]
        h_prev, h = 1, sj
        for _ in range(2, n + 1):
            h_prev, h = h, sj * h - nuj * h_prev
        Q.append(h)
    # Newton: e_i = (1/i) sum_{j=1..i} (-1)^(j-1) e_{i-j} Q_j
    e = [1]
    for i in range(1, n + 2):
        acc = 0
        for j in range(1, i + 1):
            term = e[i - j] * Q[j - 1]
            acc = acc + (term if (j - 1) % 2 == 0 else -term)
        e.append(_divide_exact(acc, i))
    coeffs = []
    tw = 1
    for i in range(n + 2):
        c = e[i] if i % 2 == 0 else -e[i]
        coeffs.append(c * tw)
        tw = tw * twist
    return EulerFactor(p, tuple(coeffs))


def _divide_exact(x, i: int):
    if isinstance(x, int):
        q, r = divmod(x, i)
        return q if r == 0 else Fraction(x, i)
    if isinstance(x, Fraction):
        v = x / i
        return int(v) if v.denominator == 1 else v
    if hasattr(x, "divide_by_int"):
        return x.divide_by_int(i)
    return x / i


def sym_euler_factor(params: SatakeParams, n: int, twist_value=1) -> EulerFactor:
    """prod_{i=0..n} (1 - twist * alpha^i beta^(n-i) X) as an exact polynomial.

    twist_value = 0 yields the trivial factor 1 (local factor removed); at a
    bad prime (beta = 0) the factor degenerates to 1 - twist * alpha^n X.
    """
    if n < 1:
        raise DomainError("symmetric power n must be >= 1")
    if _is_zero(twist_value):
        return EulerFactor(params.p, (1,))
    if not params.good_prime:
        an = params.trace**n
        return EulerFactor(params.p, (1, -twist_value * an))
    return sym_local_factor_from_pair(params.p, params.trace, params.norm, n, twist_value)


def _is_zero(x) -> bool:
    try:
        return x == 0
    except TypeError:
        return False


def dirichlet_coeffs(
    f: Newform,
    n: int,
    eta: DirichletCharacter | None = None,
    length: int = 100,
    precision: int = 113,
    bad_prime_mode: str = "partial",
):
    """b_1..b_L of the twisted symmetric-power Euler product (returned 0-based).

    Excluded primes are those dividing N*M (level times twist modulus).  In
    "partial" mode their local factor is 1; in "naive" mode the beta = 0
    degree-1 factor is used instead.  Exact integer/rational output whenever
    a_p and the twist values are rational; otherwise mpmath complexes at the
    requested precision.
    """
    if bad_prime_mode not in ("partial", "naive"):
        raise DomainError(f"unknown bad prime mode {bad_prime_mode!r}")
    if eta is None:
        eta = trivial_character(1)
    if length < 1:
        raise DomainError("length must be >= 1")
    if length > 1 and f.coefficient_count < length:
        raise RangeError(
            f"need a_p for p <= {length}, have {f.coefficient_count}", needed=length
        )
    exclude = f.level * eta.modulus
    series_at = {}
    for p in _primes_up_to(length):
        params = satake_at(f, p, precision)
        if exclude % p == 0:
            if bad_prime_mode == "partial":
                factor = EulerFactor(p, (1,))
            else:
                factor = sym_euler_factor(params, n, 1)
        else:
            t = eta.value_exact(p)
            if t.denominator <= 2:
                tw = 1 if t == 0 else -1
            else:
                tw = eta.value(p, precision)
            factor = sym_euler_factor(params, n, tw)
        e_max = 1
        while p ** (e_max + 1) <= length:
            e_max += 1
        series_at[p] = factor.series_inverse(e_max + 1)
    # smallest-prime-factor sieve drives the multiplicative expansion
    spf = [0, 1] + [0] * (length - 1)
    for i in range(2, length + 1):
        if spf[i] == 0:
            for m in range(i, length + 1, i):
                if spf[m] == 0:
                    spf[m] = i
    b = [0] * (length + 1)
    b[1] = 1
    for m in range(2, length + 1):
        p = spf[m]
        e, rest = 1, m // p
        while rest % p == 0:
            rest //= p
            e += 1
        b[m] = b[rest] * series_at[p][e]
    return b[1:]

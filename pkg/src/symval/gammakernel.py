"""Numeric core for completed-L-function evaluation.

Two ingredients live here.

* An upper incomplete gamma Gamma(a, y): lower series for small argument,
  Legendre continued fraction (modified Lentz) for large argument, with the
  crossover at y = max(1, Re a + 1); small-y nonpositive-integer a goes
  through the exponential-integral series.  This is the whole kernel story
  for degree-one gamma products.

* For products of several Gamma_R / Gamma_C factors the cutoff kernel

      K(s, x) = (1/2 pi i) int_(c) gamma(s+z) x^(-z) dz / z,
      gamma(u) = prod_j Gamma_R(u + mu_j) or Gamma_C(u + mu_j),

  is computed by shifting the contour to -infinity and summing residues.
  The poles of gamma sit on integer lattices independent of s, so their
  Laurent jets are cached per factor signature and extended on demand; the
  jets are propagated down each parity chain with the exact two-step ratio
  gamma(u+2) = P(u) gamma(u), P polynomial, which reproduces the multiple
  poles (and hence the log x terms of the kernel) without any numerical
  differentiation.  Conventions: Gamma_R(u) = pi^(-u/2) Gamma(u/2),
  Gamma_C(u) = 2 (2 pi)^(-u) Gamma(u).
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath
from mpmath import mp
from mpmath.libmp import from_man_exp, to_fixed


def _mpize(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)

from .errors import DomainError, InternalConsistencyError

__all__ = [
    "upper_gamma",
    "gamma_factor_value",
    "gamma_product_value",
    "rgamma_product_value",
    "KernelEvaluator",
    "kernel_value",
]


# ---------------------------------------------------------------------------
# incomplete gamma

_MAX_ITER = 100000


def upper_gamma(a, y, precision: int = 113):
    """Gamma(a, y) for complex a and real y > 0 at `precision` bits."""
    with mp.workprec(precision + 48):
        a = _mpize(a)
        y = mpmath.mpf(y)
        if y < 0:
            raise DomainError("y must be positive")
        if y == 0:
            return mpmath.gamma(a)
        re_a = mpmath.re(a)
        if y >= max(1, re_a + 1):
            val = _upper_gamma_cf(a, y)
        elif re_a > 0.5:
            val = _upper_gamma_series(a, y)
        elif a == mpmath.floor(re_a) and mpmath.im(a) == 0:
            val = _upper_gamma_nonpositive_int(int(re_a), y)
        else:
            m = int(mpmath.ceil(1.5 - re_a))
            val = _upper_gamma_series(a + m, y)
            for j in range(m - 1, -1, -1):
                val = (val - mpmath.power(y, a + j) * mpmath.exp(-y)) / (a + j)
        return +val


def _upper_gamma_series(a, y):
    """Gamma(a) - y^a e^-y sum y^n / (a (a+1) ... (a+n)); for y < Re(a)+1."""
    eps = mpmath.mpf(2) ** (-mp.prec + 4)
    term = 1 / a
    total = term
    n = 1
    while True:
        term = term * y / (a + n)
        total += term
        if abs(term) < eps * abs(total):
            break
        n += 1
        if n > _MAX_ITER:
            raise InternalConsistencyError("incomplete gamma series failed to converge")
    lower = mpmath.power(y, a) * mpmath.exp(-y) * total
    return mpmath.gamma(a) - lower


def _upper_gamma_cf(a, y):
    """Legendre continued fraction, modified Lentz; for y >= max(1, Re a + 1)."""
    eps = mpmath.mpf(2) ** (-mp.prec + 4)
    tiny = mpmath.mpf(2) ** (-mp.prec * 8)
    b = y + 1 - a
    c = 1 / tiny
    d = 1 / b if b != 0 else 1 / tiny
    f = d
    n = 1
    while True:
        an = -n * (n - a)
        b += 2
        d = an * d + b
        if d == 0:
            d = tiny
        c = b + an / c
        if c == 0:
            c = tiny
        d = 1 / d
        delta = d * c
        f *= delta
        if abs(delta - 1) < eps:
            break
        n += 1
        if n > _MAX_ITER:
            raise InternalConsistencyError("incomplete gamma fraction failed to converge")
    return mpmath.power(y, a) * mpmath.exp(-y) * f


def _upper_gamma_nonpositive_int(m: int, y):
    """Gamma(-|m|, y) for small y through E_1: Gamma(0, y) = -euler - log y + sum."""
    eps = mpmath.mpf(2) ** (-mp.prec + 4)
    total = mpmath.mpf(0)
    term = mpmath.mpf(-1)
    k = 1
    while True:
        term *= -y / k
        piece = term / k
        total += piece
        if abs(piece) < eps * (abs(total) + 1):
            break
        k += 1
        if k > _MAX_ITER:
            raise InternalConsistencyError("E1 series failed to converge")
    val = -mpmath.euler - mpmath.log(y) + total
    ey = mpmath.exp(-y)
    a = 0
    while a > m:
        val = (val - mpmath.power(y, a - 1) * ey) / (a - 1)
        a -= 1
    return val


# ---------------------------------------------------------------------------
# gamma factor products


def gamma_factor_value(kind: str, u):
    if kind == "R":
        return mpmath.power(mpmath.pi, -u / 2) * mpmath.gamma(u / 2)
    if kind == "C":
        return 2 * mpmath.power(2 * mpmath.pi, -u) * mpmath.gamma(u)
    raise DomainError(f"unknown gamma factor kind {kind!r}")


def gamma_product_value(factors, s):
    """gamma(s) = prod of the archimedean factors, at the ambient precision."""
    out = mpmath.mpf(1)
    for kind, shift in factors:
        out = out * gamma_factor_value(kind, s + shift)
    return out


def rgamma_product_value(factors, s):
    """1 / gamma(s), zero at poles of gamma (via the reciprocal gamma)."""
    out = mpmath.mpf(1)
    for kind, shift in factors:
        u = s + shift
        if kind == "R":
            out = out * mpmath.power(mpmath.pi, u / 2) * mpmath.rgamma(u / 2)
        else:
            out = out * mpmath.power(2 * mpmath.pi, u) * mpmath.rgamma(u) / 2
    return out


# ---------------------------------------------------------------------------
# Laurent jets


class Jet:
    """Truncated Laurent series sum_{i >= val} coeffs[i - val] * delta^i."""

    __slots__ = ("val", "coeffs")

    def __init__(self, val: int, coeffs: list):
        # normalize away exactly-zero leading coefficients
        while coeffs and coeffs[0] == 0:
            coeffs = coeffs[1:]
            val += 1
        self.val = val
        self.coeffs = coeffs

    def __len__(self):
        return len(self.coeffs)

    def get(self, i: int):
        j = i - self.val
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return mpmath.mpf(0)

    def mul(self, other: "Jet", terms: int) -> "Jet":
        n = min(terms, len(self.coeffs) + len(other.coeffs) - 1)
        out = [mpmath.mpf(0)] * n
        for i, x in enumerate(self.coeffs):
            if i >= n:
                break
            for j, yv in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] += x * yv
        return Jet(self.val + other.val, out)

    def div(self, other: "Jet", terms: int) -> "Jet":
        if not other.coeffs:
            raise ZeroDivisionError("jet division by zero jet")
        b0 = other.coeffs[0]
        n = min(terms, len(self.coeffs))
        out = []
        for i in range(n):
            acc = self.get(self.val + i)
            for j in range(1, min(i, len(other.coeffs) - 1) + 1):
                acc -= other.coeffs[j] * out[i - j]
            out.append(acc / b0)
        return Jet(self.val - other.val, out)

    @staticmethod
    def from_poly(constant, linear_coeff=1, base=0):
        """Jet of (base + constant) + linear_coeff * delta (a linear factor)."""
        return Jet(0, [mpmath.mpf(base) + constant, mpmath.mpf(linear_coeff)])


def _exp_jet(coeffs_log: list, terms: int) -> list:
    """exp of a power series with zero constant term, as coefficient list."""
    out = [mpmath.mpf(1)] + [mpmath.mpf(0)] * (terms - 1)
    # d/dx exp(f) = f' exp(f): out[n] = (1/n) sum_{k=1..n} k f_k out[n-k]
    for n in range(1, terms):
        acc = mpmath.mpf(0)
        for k in range(1, min(n, len(coeffs_log) - 1) + 1):
            acc += k * coeffs_log[k] * out[n - k]
        out[n] = acc / n
    return out


def _gamma_jet(c: Fraction, terms: int) -> Jet:
    """Laurent jet of Gamma(c + delta) at a rational point c (possibly a pole)."""
    c = Fraction(c)
    if c.denominator == 1 and c <= 0:
        m = -int(c)
        # Gamma(c + delta) = Gamma(1 + delta) / prod_{t=c}^{0} (t + delta)
        num = Jet(0, _gamma_one_plus_jet(terms + 1))
        den = Jet(0, [mpmath.mpf(0), mpmath.mpf(1)])  # the t = 0 factor: delta
        for t in range(-m, 0):
            den = den.mul(Jet(0, [mpmath.mpf(t), mpmath.mpf(1)]), terms + 2)
        return num.div(den, terms + 1)
    cf = mpmath.mpf(c.numerator) / c.denominator
    logs = [mpmath.mpf(0)]
    for j in range(1, terms):
        logs.append(mpmath.psi(j - 1, cf) / mpmath.factorial(j))
    body = _exp_jet(logs, terms)
    g = mpmath.gamma(cf)
    return Jet(0, [g * x for x in body])


def _gamma_one_plus_jet(terms: int) -> list:
    """Taylor coefficients of Gamma(1 + delta)."""
    logs = [mpmath.mpf(0), -mpmath.euler]
    for k in range(2, terms):
        logs.append((-1) ** k * mpmath.zeta(k) / k)
    return _exp_jet(logs, terms)


def _scale_jet_variable(j: Jet, factor) -> Jet:
    """Substitute delta -> factor * delta."""
    out = []
    for i, c in enumerate(j.coeffs):
        out.append(c * mpmath.power(factor, j.val + i))
    return Jet(j.val, out)


# ---------------------------------------------------------------------------
# pole chains for a gamma product


def _pole_top(kind: str, shift: int, parity: int):
    """Largest pole u = -shift - (lattice) of this factor with u = parity mod 2."""
    top = -shift
    if kind == "C":
        return top if top % 2 == parity % 2 else top - 1
    return top if top % 2 == parity % 2 else None


def _multiplicity(factors, u0: int) -> int:
    m = 0
    for kind, shift in factors:
        u = u0 + shift
        if kind == "C" and u <= 0:
            m += 1
        elif kind == "R" and u <= 0 and u % 2 == 0:
            m += 1
    return m


def _two_step_ratio_jet(factors, u0: int, terms: int) -> Jet:
    """Jet of P(u0 + delta) where gamma(u+2) = P(u) gamma(u)."""
    out = Jet(0, [mpmath.mpf(1)])
    inv2pi2 = mpmath.power(2 * mpmath.pi, -2)
    inv2pi = 1 / (2 * mpmath.pi)
    for kind, shift in factors:
        base = u0 + shift
        if kind == "C":
            out = out.mul(Jet(0, [mpmath.mpf(base), mpmath.mpf(1)]), terms)
            out = out.mul(Jet(0, [mpmath.mpf(base + 1), mpmath.mpf(1)]), terms)
            out = Jet(out.val, [c * inv2pi2 for c in out.coeffs])
        else:
            out = out.mul(Jet(0, [mpmath.mpf(base), mpmath.mpf(1)]), terms)
            out = Jet(out.val, [c * inv2pi for c in out.coeffs])
    return out


def _seed_jet(factors, u0: int, terms: int) -> Jet:
    """Laurent jet of gamma(u0 + delta) for the full factor product."""
    out = Jet(0, [mpmath.mpf(1)])
    for kind, shift in factors:
        c = u0 + shift
        if kind == "C":
            g = _gamma_jet(Fraction(c), terms + 4)
            pref = 2 * mpmath.power(2 * mpmath.pi, -c)
            expo = _exp_jet([mpmath.mpf(0), -mpmath.log(2 * mpmath.pi)], terms + 4)
            piece = Jet(g.val, [x * pref for x in g.coeffs]).mul(Jet(0, expo), terms + 4)
        else:
            g = _gamma_jet(Fraction(c, 2), terms + 4)
            g = _scale_jet_variable(g, mpmath.mpf(1) / 2)
            pref = mpmath.power(mpmath.pi, mpmath.mpf(-c) / 2)
            expo = _exp_jet([mpmath.mpf(0), -mpmath.log(mpmath.pi) / 2], terms + 4)
            piece = Jet(g.val, [x * pref for x in g.coeffs]).mul(Jet(0, expo), terms + 4)
        out = out.mul(piece, terms + 4)
    return out


class _ChainData:
    """One parity chain of lattice poles with cached Laurent jets."""

    def __init__(self, factors, parity: int, jet_terms: int):
        self.factors = factors
        self.jet_terms = jet_terms
        tops = [
            t
            for kind, shift in factors
            if (t := _pole_top(kind, shift, parity)) is not None
        ]
        self.top = max(tops) if tops else None
        self.jets: list[Jet] = []
        if self.top is not None:
            self.jets.append(_seed_jet(factors, self.top, jet_terms))

    def jet(self, index: int) -> Jet:
        """Laurent jet at u0 = top - 2*index."""
        while index >= len(self.jets):
            u0 = self.top - 2 * len(self.jets)
            prev = self.jets[-1]
            ratio = _two_step_ratio_jet(self.factors, u0, self.jet_terms + 4)
            self.jets.append(prev.div(ratio, self.jet_terms))
        return self.jets[index]


_CHAIN_CACHE: dict = {}


def _chains_for(factors, precision: int):
    """Per (factor multiset, precision bucket) chain cache."""
    sig = tuple(sorted(factors))
    bucket = precision  # precision already bucketed by callers
    key = (sig, bucket)
    if key not in _CHAIN_CACHE:
        jet_terms = len(factors) * 2 + 8
        with mp.workprec(precision):
            _CHAIN_CACHE[key] = [
                c
                for c in (_ChainData(sig, par, jet_terms) for par in (0, 1))
                if c.top is not None
            ]
    return _CHAIN_CACHE[key]


# ---------------------------------------------------------------------------
# the kernel evaluator


class KernelEvaluator:
    """K(s, x) for one gamma product at one s; evaluates over many x cheaply.

    Prepares, once per s, the residue data A[chain][log_power][step] so each
    x costs a couple of Horner passes in x^2.  `x_max` governs how far the
    chains are extended; values at x > x_max lose the tail guarantee.
    """

    def __init__(self, factors, s, precision: int, x_max):
        self.factors = tuple(factors)
        self.precision = precision
        with mp.workprec(precision):
            self.s = _mpize(s)
            self.x_max = mpmath.mpf(x_max)
            self._prepare()

    def _prepare(self):
        s = self.s
        chains = _chains_for(self.factors, self.precision)
        eps = mpmath.mpf(2) ** (-self.precision - 16)
        s_int = None
        if mpmath.im(s) == 0 and mpmath.isint(s):
            s_int = int(mpmath.re(s))
        self.merge_used = False
        self.chain_data = []
        log_xmax = mpmath.log(self.x_max) if self.x_max > 1 else mpmath.mpf(0)
        for chain in chains:
            A: list[list] = []
            ref = mpmath.mpf(0)
            idx = 0
            quiet = 0
            while True:
                u0 = chain.top - 2 * idx
                jet = chain.jet(idx)
                D = -jet.val
                merge = s_int is not None and u0 == s_int
                if merge:
                    self.merge_used = True
                    coeffs = [jet.get(-j) for j in range(0, D + 1)]
                else:
                    coeffs = []
                    inv = 1 / (u0 - s)
                    for j in range(0, max(D, 1)):
                        acc = mpmath.mpf(0)
                        ipow = inv
                        for q in range(0, D - j):
                            acc += jet.get(-1 - j - q) * ((-1) ** q) * ipow
                            ipow *= inv
                        coeffs.append(acc)
                A.append(coeffs)
                # termination: contribution scale at x_max
                mag = max(abs(c) for c in coeffs) if coeffs else mpmath.mpf(0)
                scale = mag * mpmath.exp((mpmath.re(s) - u0) * log_xmax)
                ref = max(ref, scale)
                if ref > 0 and scale < eps * ref:
                    quiet += 1
                    if quiet >= 8:
                        break
                else:
                    quiet = 0
                idx += 1
                if idx > 40000:
                    raise InternalConsistencyError("kernel chain failed to terminate")
            self.chain_data.append((chain.top, A))
        self.gamma_at_s = None
        if not self.merge_used:
            self.gamma_at_s = gamma_product_value(self.factors, s)
        self._build_fixed_tables()

    def _build_fixed_tables(self):
        # The per-x Horner loops run in fixed-point integer arithmetic.  The
        # step-l coefficient is premultiplied by x_max^(2l), so the Horner
        # variable (x/x_max)^2 stays bounded by ~1 and no dynamic range is
        # lost to the fixed-point conversion.
        F = self.precision + 32
        self._F = F
        self._tables = []
        y_max = self.x_max * self.x_max
        for top, A in self.chain_data:
            dmax = max(len(row) for row in A)
            is_complex = any(isinstance(c, mpmath.mpc) for row in A for c in row)
            cols_re = [[] for _ in range(dmax)]
            cols_im = [[] for _ in range(dmax)]
            row_bits = []  # magnitude profile, for per-x truncation
            pw = mpmath.mpf(1)
            for row in A:
                bits = -(10**9)
                for j in range(dmax):
                    c = (row[j] if j < len(row) else mpmath.mpf(0)) * pw
                    if isinstance(c, mpmath.mpc):
                        cols_re[j].append(to_fixed(c.real._mpf_, F))
                        cols_im[j].append(to_fixed(c.imag._mpf_, F))
                    else:
                        cols_re[j].append(to_fixed(mpmath.mpf(c)._mpf_, F))
                        cols_im[j].append(0)
                    if c != 0:
                        bits = max(bits, int(mpmath.mag(c)))
                row_bits.append(bits)
                pw *= y_max
            self._tables.append((top, dmax, cols_re, cols_im, is_complex, row_bits))

    def _cut(self, row_bits, rlog):
        """Rows beyond the cut contribute below the fixed-point floor."""
        thresh = -(self._F - 12)
        cut = len(row_bits)
        running = -(10**9)
        while cut > 1:
            running = max(running, row_bits[cut - 1] + (cut - 1) * rlog)
            if running >= thresh:
                break
            cut -= 1
        return cut

    def __call__(self, x):
        """K(s, x); x > 0 real."""
        with mp.workprec(self.precision):
            x = mpmath.mpf(x)
            L = mpmath.log(x)
            F = self._F
            ratio = x * x / (self.x_max * self.x_max)
            Y = to_fixed(ratio._mpf_, F)
            rlog = 2.0 * float(mpmath.log(x / self.x_max, 2)) if x > 0 else -1e9
            total = mpmath.mpf(0) if self.gamma_at_s is None else +self.gamma_at_s
            for top, dmax, cols_re, cols_im, is_complex, row_bits in self._tables:
                cut = self._cut(row_bits, min(rlog, 0.0))
                sums = []
                for j in range(dmax):
                    acc = 0
                    col = cols_re[j]
                    for idx in range(cut - 1, -1, -1):
                        acc = (acc * Y >> F) + col[idx]
                    sj = mpmath.make_mpf(from_man_exp(acc, -F, F))
                    if is_complex:
                        acc_i = 0
                        col_i = cols_im[j]
                        for idx in range(cut - 1, -1, -1):
                            acc_i = (acc_i * Y >> F) + col_i[idx]
                        sj = mpmath.mpc(sj, mpmath.make_mpf(from_man_exp(acc_i, -F, F)))
                    sums.append(sj)
                poly = mpmath.mpf(0)
                fact = 1
                Lp = mpmath.mpf(1)
                for j in range(dmax):
                    poly += sums[j] * Lp / fact
                    Lp *= -L
                    fact *= max(j + 1, 1)
                total += mpmath.exp((self.s - top) * L) * poly
            return +total


def kernel_value(factors, s, x, precision: int = 113):
    """One-off K(s, x).  Degree-one products go through incomplete gamma."""
    factors = tuple(factors)
    if len(factors) == 1:
        kind, shift = factors[0]
        with mp.workprec(precision + 16):
            s = _mpize(s)
            x = mpmath.mpf(x)
            u = s + shift
            if kind == "R":
                val = mpmath.power(mpmath.pi, -u / 2) * upper_gamma(
                    u / 2, mpmath.pi * x * x, precision + 16
                )
            else:
                val = 2 * mpmath.power(2 * mpmath.pi, -u) * upper_gamma(
                    u, 2 * mpmath.pi * x, precision + 16
                )
            return +val
    return KernelEvaluator(factors, s, precision, x)(x)

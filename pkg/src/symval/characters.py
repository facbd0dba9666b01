"""Dirichlet characters with exact root-of-unity values, conductors, Gauss sums.

A character mod M is stored by its values on the canonical generators of
(Z/MZ)^*, each value kept as an exact exponent t in [0,1) with chi(g) =
exp(2*pi*i*t).  Complex floats appear only when a value is evaluated at a
requested precision, so twisted Euler factors downstream can stay exact
over a cyclotomic representation.

Generator convention (also the CLI/JSON addressing convention): CRT factors
ordered by ascending prime; for the 2-part, no generator when 2||M, the
single generator -1 for 4||M, and the pair (-1, 5) when 8|M; for odd p^a the
least primitive root, CRT-lifted to be 1 at the other factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import mpmath

from .errors import ArityError, ConsistencyError, DomainError

__all__ = [
    "DirichletCharacter",
    "GaussSumValue",
    "make_character",
    "trivial_character",
    "gauss_sum",
    "delta_exponents",
    "unit_group_generators",
    "all_characters",
    "kronecker_symbol",
]


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization, smallest prime first."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(q: int) -> int:
    out = 1
    for p, e in factorize(q):
        out *= (p - 1) * p ** (e - 1)
    return out


def _multiplicative_order(a: int, m: int, phi: int) -> int:
    order = phi
    for p, _ in factorize(phi):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def _primitive_root(q: int) -> int:
    # q an odd prime power; returns the least primitive root
    phi = euler_phi(q)
    for g in range(2, q):
        if math.gcd(g, q) != 1:
            continue
        if _multiplicative_order(g, q, phi) == phi:
            return g
    raise ConsistencyError(f"no primitive root mod {q}")


def _crt_lift(residue: int, q: int, modulus: int) -> int:
    """x = residue mod q, x = 1 mod modulus/q (the two parts are coprime)."""
    rest = modulus // q
    if rest == 1:
        return residue % modulus
    inv_q = pow(q, -1, rest)
    x = residue + q * (((1 - residue) * inv_q) % rest)
    return x % modulus


def unit_group_generators(modulus: int) -> list[tuple[int, int]]:
    """Canonical (generator, order) pairs for (Z/modulus)^*, CRT-lifted."""
    if modulus == 1:
        return []
    gens = []
    for p, e in sorted(factorize(modulus)):
        q = p**e
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                gens.append((_crt_lift(3, 4, modulus), 2))
            else:
                gens.append((_crt_lift(q - 1, q, modulus), 2))
                gens.append((_crt_lift(5, q, modulus), q // 4))
        else:
            g = _primitive_root(q)
            gens.append((_crt_lift(g, q, modulus), euler_phi(q)))
    return gens


@dataclass(eq=False)
class DirichletCharacter:
    """Character of (Z/modulus)^*: zero off units, exact values on units."""

    modulus: int
    generator_values: tuple[Fraction, ...]  # chi(g_i) = e(t_i)
    _gens: tuple[tuple[int, int], ...] = field(repr=False, default=())
    _dlog: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if self.modulus < 1:
            raise DomainError("modulus must be positive")
        gens = tuple(unit_group_generators(self.modulus))
        if len(self.generator_values) != len(gens):
            raise ArityError(
                f"modulus {self.modulus} needs {len(gens)} generator values, "
                f"got {len(self.generator_values)}"
            )
        vals = []
        for t, (g, d) in zip(self.generator_values, gens):
            t = Fraction(t) % 1
            if (t * d).denominator != 1:
                raise ConsistencyError(
                    f"value exponent {t} incompatible with generator order {d}"
                )
            vals.append(t)
        self.generator_values = tuple(vals)
        self._gens = gens

    # -- evaluation --------------------------------------------------------

    def _decomposition(self, a: int) -> tuple[int, ...] | None:
        """Exponent tuple of a over the canonical generators, None off units."""
        a %= self.modulus
        if math.gcd(a, self.modulus) != 1:
            return None
        if not self._dlog:
            # enumerate the whole unit group once; moduli used here are small
            M = self.modulus
            table = {}
            for exps in product(*[range(d) for _, d in self._gens]):
                x = 1
                for (g, _), e in zip(self._gens, exps):
                    x = x * pow(g, e, M) % M
                table[x] = exps
            self._dlog.update(table)
        return self._dlog[a]

    def value_exact(self, a: int) -> Fraction | None:
        """Exponent t with chi(a) = e(t), or None when gcd(a, M) > 1."""
        if self.modulus == 1:
            return Fraction(0)
        exps = self._decomposition(a)
        if exps is None:
            return None
        t = Fraction(0)
        for e, tg in zip(exps, self.generator_values):
            t += e * tg
        return t % 1

    def value(self, a: int, precision: int = 53):
        """chi(a) as an mpmath complex number at `precision` bits."""
        t = self.value_exact(a)
        with mpmath.mp.workprec(precision + 10):
            if t is None:
                return mpmath.mpc(0)
            return mpmath.expjpi(2 * mpmath.mpf(t.numerator) / t.denominator)

    # -- invariants ----------------------------------------------------------

    @property
    def order(self) -> int:
        o = 1
        for t in self.generator_values:
            o = o * t.denominator // math.gcd(o, t.denominator)
        return o

    @property
    def is_trivial(self) -> bool:
        return all(t == 0 for t in self.generator_values)

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    @property
    def parity(self) -> int:
        """chi(-1), +1 or -1."""
        if self.modulus <= 2:
            return 1
        t = self.value_exact(self.modulus - 1)
        return 1 if t == 0 else -1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @property
    def conductor(self) -> int:
        """Smallest modulus through which the character factors."""
        cond = 1
        o_minus = 1  # order on the -1 generator of the 2-part
        o_five = 1  # order on the 5 generator of the 2-part
        for (g, d), t in zip(self._gens, self.generator_values):
            o = t.denominator if t != 0 else 1
            p = self._generator_prime(g)
            if p == 2:
                if self._is_five_generator(g, d):
                    o_five = o
                else:
                    o_minus = o
            elif o > 1:
                cond *= p ** (1 + _vp(o, p))
        if o_five > 1:
            cond *= 2 ** (_vp(o_five, 2) + 2)
        elif o_minus > 1:
            cond *= 4
        return cond

    def _generator_prime(self, g: int) -> int:
        for p, e in factorize(self.modulus):
            if g % p**e != 1:
                return p
        raise ConsistencyError("generator congruent to 1 at every factor")

    def _is_five_generator(self, g: int, d: int) -> bool:
        two = 2 ** _vp(self.modulus, 2)
        if two < 8:
            return False
        return g % two == 5 % two

    def primitive(self) -> "DirichletCharacter":
        """The primitive character mod the conductor inducing this one."""
        c = self.conductor
        if c == self.modulus:
            return self
        vals = []
        for g, _ in unit_group_generators(c):
            gl = _lift_unit(g, c, self.modulus)
            t = self.value_exact(gl)
            if t is None:
                raise ConsistencyError("conductor computation inconsistent")
            vals.append(t)
        return DirichletCharacter(c, tuple(vals))

    def induce(self, modulus: int) -> "DirichletCharacter":
        """Induce to a character of the given multiple of the modulus."""
        if modulus % self.modulus:
            raise ConsistencyError("can only induce to a multiple of the modulus")
        vals = []
        for g, _ in unit_group_generators(modulus):
            t = self.value_exact(g)
            if t is None:
                raise ConsistencyError("induction hit a non-unit generator")
            vals.append(t)
        return DirichletCharacter(modulus, tuple(vals))

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus, tuple((-t) % 1 for t in self.generator_values)
        )

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            m = self.modulus * other.modulus // math.gcd(self.modulus, other.modulus)
            return self.induce(m) * other.induce(m)
        return DirichletCharacter(
            self.modulus,
            tuple((a + b) % 1 for a, b in zip(self.generator_values, other.generator_values)),
        )

    def __pow__(self, n: int) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus, tuple((t * n) % 1 for t in self.generator_values)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.generator_values == other.generator_values
        )

    def __hash__(self):
        return hash((self.modulus, self.generator_values))

    def label(self) -> str:
        exps = [int(t * d) for t, (_, d) in zip(self.generator_values, self._gens)]
        return f"{self.modulus}:{exps}"


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0 and n:
        n //= p
        v += 1
    return v


def _lift_unit(g: int, c: int, M: int) -> int:
    """A unit mod M congruent to g mod c (requires c | M and gcd(g, c) = 1).

    Every prime of M/rest divides c, so g itself is already a unit there;
    CRT in a 1 at the remaining factors.
    """
    rest = 1
    for p, e in factorize(M):
        if c % p:
            rest *= p**e
    cp = M // rest
    x0 = g % cp if cp > 1 else 0
    if rest == 1:
        return x0
    if cp == 1:
        return 1 % M
    inv = pow(cp % rest, -1, rest)
    return (x0 + cp * (((1 - x0) * inv) % rest)) % M


def make_character(modulus: int, generator_exponents) -> DirichletCharacter:
    """Character from integer exponents e_i: chi(g_i) = zeta_{d_i}^{e_i}."""
    gens = unit_group_generators(modulus)
    if len(generator_exponents) != len(gens):
        raise ArityError(
            f"modulus {modulus} has {len(gens)} unit-group generators, "
            f"got {len(generator_exponents)} exponents"
        )
    vals = tuple(Fraction(e % d, d) for e, (_, d) in zip(generator_exponents, gens))
    return DirichletCharacter(modulus, vals)


def trivial_character(modulus: int = 1) -> DirichletCharacter:
    return make_character(modulus, [0] * len(unit_group_generators(modulus)))


def all_characters(modulus: int):
    """Iterate over every Dirichlet character of the given modulus."""
    gens = unit_group_generators(modulus)
    for exps in product(*[range(d) for _, d in gens]):
        yield make_character(modulus, list(exps))


@dataclass
class GaussSumValue:
    """Numeric Gauss sum with an optional recognized exact form."""

    value: object  # mpmath mpc
    character: DirichletCharacter
    exact_tag: str | None = None


def gauss_sum(chi: DirichletCharacter, precision: int = 53) -> GaussSumValue:
    """g(chi) = sum_{u mod c} chi_0(u) exp(-2*pi*i*u/c) over the conductor c.

    The sum is always taken at the conductor through the associated primitive
    character chi_0.  For primitive input, |g|^2 = c is checked internally.
    """
    if precision < 53:
        raise DomainError("precision below 53 bits not supported")
    chi0 = chi.primitive()
    c = chi0.modulus
    with mpmath.mp.workprec(precision + 16):
        if c == 1:
            g = mpmath.mpc(1)
        else:
            g = mpmath.mpc(0)
            for u in range(1, c):
                t = chi0.value_exact(u)
                if t is None:
                    continue
                phase = t - Fraction(u, c)
                g += mpmath.expjpi(2 * mpmath.mpf(phase.numerator) / phase.denominator)
        if chi.modulus == chi0.modulus and c > 1:
            err = abs(abs(g) ** 2 - c)
            if err > mpmath.mpf(2) ** (-(precision // 2)):
                raise ConsistencyError("|g(chi)|^2 != conductor for primitive chi")
        tag = None
        if c == 1:
            tag = "1"
        elif chi0.order == 2:
            r = g / mpmath.sqrt(c)
            tol = mpmath.mpf(2) ** (-(precision // 2))
            for cand, name in (
                (mpmath.mpc(1), "sqrt(c)"),
                (mpmath.mpc(-1), "-sqrt(c)"),
                (mpmath.mpc(0, 1), "i*sqrt(c)"),
                (mpmath.mpc(0, -1), "-i*sqrt(c)"),
            ):
                if abs(r - cand) < tol:
                    tag = name
                    break
        g = mpmath.mpc(g)
    return GaussSumValue(value=g, character=chi, exact_tag=tag)


def delta_exponents(omega: DirichletCharacter, k: int) -> tuple[int, DirichletCharacter]:
    """Symbolic determinant-period factor: (power of 2*pi*i, Gauss-sum character).

    delta(omega) = (2*pi*i)^(1-k) g(omega); returned as the pair (1-k, omega)
    with no numeric evaluation.
    """
    if k < 1:
        raise DomainError("weight must be >= 1")
    return (1 - k, omega)


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return 1
    result = 1
    v = _vp(n, 2)
    n >>= v
    if v:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = (-1) ** v
    # Jacobi symbol (D/n) for odd n > 0
    a = D % n
    while a != 0:
        va = _vp(a, 2)
        a >>= va
        if va % 2 == 1 and n % 8 in (3, 5):
            result = -result
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a, n = n % a, a
    return result if n == 1 else 0

"""CM forms by automorphic induction from class-number-one imaginary
quadratic fields, and exact verification of the symmetric-power isobaric
decompositions they satisfy.

The ring of integers is Z[theta] with theta = sqrt(D)/2 for D = 0 mod 4 and
theta = (1+sqrt(D))/2 for D = 1 mod 4.  Class number one makes every ideal
principal, so Hecke characters reduce to normalized-generator arithmetic:
chi((alpha)) = alpha_0^u where alpha_0 is the associate of alpha congruent
to 1 mod the conductor.  Configurations where that normalization fails to
exist or to be single-valued are rejected at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import (
    DirichletCharacter,
    kronecker_symbol,
    make_character,
    unit_group_generators,
)
from .errors import ConsistencyError, DomainError, IllDefinedCharacterError
from .qseries import Newform, _primes_up_to, hecke_validate
from .satake import EulerFactor, sym_local_factor_from_pair

CLASS_NUMBER_ONE_DISCRIMINANTS = (-3, -4, -7, -8, -11, -19, -43, -67, -163)

__all__ = [
    "CLASS_NUMBER_ONE_DISCRIMINANTS",
    "QuadInt",
    "ImagQuadField",
    "HeckeCharacter",
    "CMForm",
    "DecompositionReport",
    "cm_newform",
    "isobaric_factors",
    "verify_decomposition",
    "period_relation_exponents",
    "parse_conductor",
]


# ---------------------------------------------------------------------------
# exact arithmetic in O_K


@dataclass(frozen=True)
class QuadInt:
    """a + b*theta in the maximal order of Q(sqrt(D)), D a fundamental discriminant."""

    D: int
    a: int
    b: int

    def _theta_sq(self) -> tuple[int, int]:
        # theta^2 = c0 + c1*theta
        if self.D % 4 == 0:
            return self.D // 4, 0
        return (self.D - 1) // 4, 1

    def __add__(self, o):
        o = self._coerce(o)
        return QuadInt(self.D, self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        o = self._coerce(o)
        return QuadInt(self.D, self.a - o.a, self.b - o.b)

    def __neg__(self):
        return QuadInt(self.D, -self.a, -self.b)

    def __mul__(self, o):
        o = self._coerce(o)
        c0, c1 = self._theta_sq()
        bd = self.b * o.b
        return QuadInt(
            self.D,
            self.a * o.a + bd * c0,
            self.a * o.b + self.b * o.a + bd * c1,
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return self._coerce(o) - self

    def _coerce(self, o) -> "QuadInt":
        if isinstance(o, QuadInt):
            if o.D != self.D:
                raise DomainError("mixed discriminants")
            return o
        if isinstance(o, int):
            return QuadInt(self.D, o, 0)
        return NotImplemented

    def __pow__(self, e: int) -> "QuadInt":
        r = QuadInt(self.D, 1, 0)
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def conj(self) -> "QuadInt":
        if self.D % 4 == 0:
            return QuadInt(self.D, self.a, -self.b)
        return QuadInt(self.D, self.a + self.b, -self.b)

    def norm(self) -> int:
        n = self * self.conj()
        assert n.b == 0
        return n.a

    def trace(self) -> int:
        t = self + self.conj()
        assert t.b == 0
        return t.a

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def divides(self, other: "QuadInt") -> bool:
        return other.divide(self) is not None

    def divide(self, d: "QuadInt"):
        """self / d as a QuadInt, or None when not divisible."""
        nd = d.norm()
        if nd == 0:
            raise ZeroDivisionError
        num = self * d.conj()
        if num.a % nd or num.b % nd:
            return None
        return QuadInt(self.D, num.a // nd, num.b // nd)

    def __str__(self):
        sym = "i" if self.D == -4 else "w"
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}{sym}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}{sym}"


@dataclass(frozen=True)
class ImagQuadField:
    """Imaginary quadratic field of class number one."""

    D: int

    def __post_init__(self):
        if self.D not in CLASS_NUMBER_ONE_DISCRIMINANTS:
            raise DomainError(
                f"discriminant {self.D} is not a class-number-one imaginary "
                f"quadratic discriminant {CLASS_NUMBER_ONE_DISCRIMINANTS}"
            )

    def element(self, a: int, b: int = 0) -> QuadInt:
        return QuadInt(self.D, a, b)

    @property
    def theta(self) -> QuadInt:
        return QuadInt(self.D, 0, 1)

    def units(self) -> tuple[QuadInt, ...]:
        one = self.element(1)
        if self.D == -4:
            i = self.theta
            return (one, i, -one, -i)
        if self.D == -3:
            z = self.theta  # a primitive 6th root of unity
            return (one, z, z * z, -one, -z, -(z * z))
        return (one, -one)

    def unit_turn(self, u: QuadInt) -> Fraction:
        """Exponent t with u = e(t), for u a unit."""
        for j, v in enumerate(self.units()):
            if v == u:
                w = len(self.units())
                order = {2: Fraction(1, 2), 4: Fraction(1, 4), 6: Fraction(1, 6)}[w]
                # units() lists e(0), e(1/w), ..., in order for every field
                return (j * order) % 1
        raise DomainError(f"{u} is not a unit")

    def quadratic_character(self) -> DirichletCharacter:
        """omega_K mod |D|: +1/-1/0 at split/inert/ramified primes."""
        M = abs(self.D)
        exps = []
        for g, d in unit_group_generators(M):
            s = kronecker_symbol(self.D, g)
            if s == 1:
                exps.append(0)
            elif s == -1:
                exps.append(d // 2)
            else:
                raise ConsistencyError("generator not coprime to |D|")
        return make_character(M, exps)

    def splitting(self, p: int) -> str:
        s = kronecker_symbol(self.D, p)
        return {1: "split", -1: "inert", 0: "ramified"}[s]

    def prime_above(self, p: int) -> QuadInt:
        """A prime element of norm p (split/ramified p), by norm-form search.

        Brute force over the theta-coordinate; fine at the few-thousand
        prime scale this package works at.
        """
        kind = self.splitting(p)
        if kind == "inert":
            raise DomainError(f"{p} is inert in Q(sqrt({self.D}))")
        if self.D % 4 == 0:
            d = -self.D // 4
            for b in range(0, math.isqrt(p // d) + 1):
                rest = p - d * b * b
                if rest < 0:
                    break
                a = math.isqrt(rest)
                if a * a == rest:
                    return self.element(a, b)
        else:
            # u^2 + |D| v^2 = 4p with pi = (u + v sqrt(D))/2 = (u-v)/2 + v*theta
            for v in range(0, math.isqrt(4 * p // -self.D) + 1):
                rest = 4 * p + self.D * v * v
                if rest < 0:
                    break
                u = math.isqrt(rest)
                if u * u == rest and (u - v) % 2 == 0:
                    return self.element((u - v) // 2, v)
        raise ConsistencyError(f"norm form failed to represent {p} (D={self.D})")


# ---------------------------------------------------------------------------
# Hecke characters and CM forms


@dataclass(eq=False)
class HeckeCharacter:
    """chi((alpha)) = alpha_0^u, alpha_0 the generator congruent to 1 mod f.

    infinity_weight u must be >= 1; the resulting CM form has weight u+1.
    Construction enforces: f is Galois-stable (as an ideal); units congruent
    to 1 mod f have u-th power 1 (single-valuedness); the unit normalizing
    any rational residue class has real u-th power (rational coefficients
    downstream); and no nonzero power of chi is Galois-invariant, which is
    automatic for u >= 1 over an imaginary quadratic field.
    """

    field: ImagQuadField
    infinity_weight: int
    conductor: QuadInt

    def __post_init__(self):
        K, u, f = self.field, self.infinity_weight, self.conductor
        if u < 1:
            raise DomainError("infinity weight must be >= 1 (weight-one forms have no critical points)")
        if f.norm() == 0:
            raise DomainError("conductor must be nonzero")
        fb = f.conj()
        if f.divide(fb) is None or fb.divide(f) is None:
            raise IllDefinedCharacterError(
                "conductor must be Galois-stable for rational induced coefficients"
            )
        for eps in K.units():
            if f.divides(eps - K.element(1)) and (eps**u) != K.element(1):
                raise IllDefinedCharacterError(
                    "a unit congruent to 1 mod f has nontrivial u-th power"
                )
        # rational residue classes must normalize with a real unit power
        for m in range(1, self.rational_conductor() + 1):
            if math.gcd(m, self.rational_conductor()) != 1:
                continue
            eps = self._normalizing_unit(K.element(m))
            if not (eps**u).is_rational:
                raise IllDefinedCharacterError(
                    f"chi restricted to Q is nonreal at residue {m}; induced "
                    "coefficients would be irrational"
                )

    def rational_conductor(self) -> int:
        """Smallest positive integer lying in the conductor ideal."""
        f = self.conductor
        n = abs(f.norm())
        for t in range(1, n + 1):
            if n % t == 0 and f.divides(self.field.element(t)):
                return t
        return n

    def _normalizing_unit(self, g: QuadInt) -> QuadInt:
        """The unit eps with eps*g = 1 mod f, or raise."""
        K, f = self.field, self.conductor
        hits = [
            eps
            for eps in K.units()
            if f.divides(eps * g - K.element(1))
        ]
        if not hits:
            raise IllDefinedCharacterError(
                f"no associate of {g} is congruent to 1 mod the conductor "
                "(nontrivial ray class); character ill-defined"
            )
        return hits[0]

    def normalized_generator(self, g: QuadInt) -> QuadInt:
        return self._normalizing_unit(g) * g

    def value_at_generator(self, g: QuadInt) -> QuadInt:
        """chi((g)) for an ideal (g) coprime to the conductor."""
        return self.normalized_generator(g) ** self.infinity_weight

    def rational_restriction_turn(self, m: int) -> Fraction:
        """Exponent t with chi_Q(m) = e(t) for m coprime to the conductor."""
        eps = self._normalizing_unit(self.field.element(m))
        K = self.field
        return (K.unit_turn(eps) * self.infinity_weight) % 1

    def power(self, j: int) -> "HeckeCharacter":
        if j < 1:
            raise DomainError("only positive powers are used")
        return HeckeCharacter(self.field, self.infinity_weight * j, self.conductor)

    @property
    def weight(self) -> int:
        """Weight of the induced form."""
        return self.infinity_weight + 1

    @property
    def level(self) -> int:
        return abs(self.field.D) * abs(self.conductor.norm())


@dataclass(eq=False)
class CMForm:
    form: Newform
    character: HeckeCharacter


def _coefficient_at_prime(chi: HeckeCharacter, p: int) -> int:
    """a_p of the induced form: chi(P) + chi(P-bar) split, 0 inert,
    chi(P) ramified away from the conductor, 0 at p | Nm(f)."""
    K = chi.field
    if chi.rational_conductor() % p == 0 or abs(chi.conductor.norm()) % p == 0:
        return 0
    kind = K.splitting(p)
    if kind == "inert":
        return 0
    pi = K.prime_above(p)
    val = chi.value_at_generator(pi)
    if kind == "ramified":
        if not val.is_rational:
            raise IllDefinedCharacterError(
                f"chi at the ramified prime {p} is irrational"
            )
        return val.a
    return val.trace()


def _nebentypus(chi: HeckeCharacter) -> DirichletCharacter:
    """omega with omega * omega_K = chi_Q, assembled mod the level."""
    K = chi.field
    N = chi.level
    exps = []
    for g, d in unit_group_generators(N):
        t = chi.rational_restriction_turn(g)
        wk = kronecker_symbol(K.D, g)
        if wk == 0:
            raise ConsistencyError("level generator not coprime to |D|")
        if wk == -1:
            t = (t + Fraction(1, 2)) % 1
        if (t * d).denominator != 1:
            raise ConsistencyError("nebentypus value incompatible with generator order")
        exps.append(int(t * d))
    return make_character(N, exps)


def cm_newform(chi: HeckeCharacter, length: int) -> CMForm:
    """Synthesize the induced newform with a_1..a_length, Hecke-validated."""
    if length < 4:
        raise DomainError("need length >= 4 to validate")
    k = chi.weight
    N = chi.level
    omega = _nebentypus(chi)
    if omega.parity != (-1) ** k:
        raise ConsistencyError("nebentypus parity does not match the weight")
    a = [0] * (length + 1)
    a[1] = 1
    for p in _primes_up_to(length):
        ap = _coefficient_at_prime(chi, p)
        e_max = 1
        while p ** (e_max + 1) <= length:
            e_max += 1
        pp = [1, ap]
        if N % p == 0:
            for _ in range(2, e_max + 1):
                pp.append(ap * pp[-1])
        else:
            t = omega.value_exact(p)
            if t is None or t.denominator > 2:
                raise ConsistencyError(f"nonreal nebentypus value at good prime {p}")
            w = 1 if t == 0 else -1
            for e in range(2, e_max + 1):
                pp.append(ap * pp[-1] - w * p ** (k - 1) * pp[-2])
        for e in range(1, e_max + 1):
            a[p**e] = pp[e]
    # multiplicative fill over the smallest prime factor
    spf = [0, 1] + [0] * (length - 1)
    for i in range(2, length + 1):
        if spf[i] == 0:
            for m in range(i, length + 1, i):
                if spf[m] == 0:
                    spf[m] = i
    for m in range(2, length + 1):
        p = spf[m]
        q = p
        while (m // q) % p == 0:
            q *= p
        if q != m:
            a[m] = a[q] * a[m // q]
    form = Newform(
        weight=k,
        level=N,
        nebentypus=omega,
        coefficients=tuple(a[1:]),
        name=f"cm(D={chi.field.D},u={chi.infinity_weight})",
    )
    report = hecke_validate(form)
    if not report.ok:
        raise ConsistencyError(
            f"induced coefficients failed Hecke validation: {report.violations[:3]}"
        )
    return CMForm(form=form, character=chi)


# ---------------------------------------------------------------------------
# isobaric decomposition


def isobaric_factors(n: int) -> list:
    """Symbolic summands of Sym^n of an induced form.

    Sym^{2r} AI(chi) = [AI(chi^{2r-a} chi'^a) for a = 0..r-1] + chi_Q^r;
    Sym^{2r+1} AI(chi) = [AI(chi^{2r+1-a} chi'^a) for a = 0..r].
    Descriptors: ("AI", e, a) for AI(chi^e chi'^a), ("abelian", r) for chi_Q^r.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n % 2 == 0:
        r = n // 2
        out = [("AI", n - a, a) for a in range(r)]
        out.append(("abelian", r))
        return out
    r = (n - 1) // 2
    return [("AI", n - a, a) for a in range(r + 1)]


@dataclass
class DecompositionReport:
    n: int
    prime_bound: int
    checked: list
    failures: list
    skipped: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_decomposition(phi: CMForm, n: int, prime_bound: int) -> DecompositionReport:
    """Exact local check of the symmetric-power isobaric decomposition.

    At every good prime p <= prime_bound the degree-(n+1) factor of Sym^n of
    the induced form must equal the product of the local factors of the
    summands: the forms induced from chi^{2(r-a)} (even n) or chi^{2(r-a)+1}
    (odd n) twisted by chi_Q^a with the argument shift s -> s - a(k-1)
    realized as X -> p^{a(k-1)} X, together with the degree-one factor of
    chi_Q^r for even n.  Bad primes are skipped and listed.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    chi = phi.character
    k = chi.weight
    f = phi.form
    checked, failures, skipped = [], [], []
    even = n % 2 == 0
    r = n // 2 if even else (n - 1) // 2
    powers = {}
    for a in range(r + 1):
        j = 2 * (r - a) if even else 2 * (r - a) + 1
        if j >= 1:
            powers[j] = chi.power(j)
    for p in _primes_up_to(prime_bound):
        if f.level % p == 0:
            skipped.append(p)
            continue
        t_omega = f.nebentypus.value_exact(p)
        w = 1 if t_omega == 0 else -1
        lhs = sym_local_factor_from_pair(p, f.a(p), w * p ** (k - 1), n)
        # chi_Q(p) as +-1
        tq = chi.rational_restriction_turn(p)
        if tq.denominator > 2:
            raise ConsistencyError("nonreal chi_Q at a good prime")
        chi_q = 1 if tq == 0 else -1
        rhs = EulerFactor(p, (1,))
        if even:
            rhs = rhs * EulerFactor(p, (1, -(chi_q**r) * p ** (r * (k - 1))))
        for a in range(r if even else r + 1):
            j = 2 * (r - a) if even else 2 * (r - a) + 1
            chij = powers[j]
            apj = _coefficient_at_prime(chij, p)
            # nebentypus of the induced form of chi^j at p
            tj = (chij.rational_restriction_turn(p)) % 1
            wk = kronecker_symbol(chi.field.D, p)
            wj = (1 if tj == 0 else -1) * wk
            twist = chi_q**a
            local = sym_local_factor_from_pair(
                p, apj, wj * p ** (chij.weight - 1), 1, twist=twist
            )
            rhs = rhs * local.shift_argument(a * (k - 1))
        if lhs.coefficients == rhs.coefficients:
            checked.append(p)
        else:
            failures.append((p, lhs.coefficients, rhs.coefficients))
    return DecompositionReport(n, prime_bound, checked, failures, skipped)


@dataclass(frozen=True)
class PeriodRelation:
    """c^{sign}(phi_{chi^n}) ~ c^+(phi_chi)^exponent * extra."""

    sign: str
    exponent: int
    extra_factor: str


def period_relation_exponents(n: int) -> tuple[PeriodRelation, PeriodRelation]:
    """Symbolic period relations for induced forms; bookkeeping only."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return (
        PeriodRelation("+", n, "1"),
        PeriodRelation("-", n, "g(omega_K)"),
    )


# ---------------------------------------------------------------------------
# CLI conductor syntax: products of powers like "(1+i)^3" or "(2w+1)^2*(3)"


def parse_conductor(text: str, K: ImagQuadField) -> QuadInt:
    import re

    text = text.replace(" ", "")
    if not text:
        raise DomainError("empty conductor")
    result = K.element(1)
    for part in text.split("*"):
        m = re.fullmatch(r"\(([^()]+)\)(?:\^(\d+))?", part)
        if not m:
            raise DomainError(f"cannot parse conductor factor {part!r}")
        base = _parse_quadint(m.group(1), K)
        exp = int(m.group(2)) if m.group(2) else 1
        result = result * base**exp
    return result


def _parse_quadint(expr: str, K: ImagQuadField) -> QuadInt:
    import re

    sym = "i" if K.D == -4 else "w"
    a = b = 0
    for sign, num, var in re.findall(rf"([+-]?)(\d*)({sym}?)", expr):
        if not num and not var:
            continue
        s = -1 if sign == "-" else 1
        coeff = int(num) if num else 1
        if var:
            b += s * coeff
        else:
            a += s * coeff
    cand = K.element(a, b)
    # reject garbage that regex silently ignored
    cleaned = re.sub(rf"[+-]?\d*{sym}?", "", expr)
    if cleaned:
        raise DomainError(f"cannot parse element {expr!r}")
    return cand

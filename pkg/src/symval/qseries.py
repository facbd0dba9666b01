"""Exact q-expansion engine: eta powers, level-one eigenforms, newform I/O.

All coefficient arithmetic in this module is exact big-integer / rational;
no floating point.  Truncated series multiplication is done by Kronecker
substitution (coefficients packed into one big integer, multiplied once,
unpacked), which keeps everything exact while staying fast enough for the
10^4..10^5 coefficient range the rest of the package asks for.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import DirichletCharacter, make_character, trivial_character, unit_group_generators
from .errors import (
    ConsistencyError,
    NormalizationError,
    ParseError,
    RangeError,
    ResourceError,
)

DEFAULT_COEFF_BUDGET = 10**5

__all__ = [
    "PowerSeries",
    "Newform",
    "HeckeReport",
    "eta_power",
    "delta_newform",
    "eisenstein_series",
    "level_one_form",
    "load_newform",
    "serialize_newform",
    "hecke_validate",
    "DEFAULT_COEFF_BUDGET",
]


# ----------------------------------------------------------------------------
# power series


@dataclass(frozen=True)
class PowerSeries:
    """Integer power series in q, truncated: coefficients[i] is the q^i term."""

    coefficients: tuple

    @property
    def truncation_length(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int):
        return self.coefficients[i]

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        L = min(self.truncation_length, other.truncation_length)
        return PowerSeries(
            tuple(_mul_trunc(self.coefficients[:L], other.coefficients[:L], L))
        )

    def pow(self, e: int) -> "PowerSeries":
        """Binary powering with truncated multiplication."""
        if e < 0:
            raise ValueError("nonnegative exponents only")
        L = self.truncation_length
        result = PowerSeries((1,) + (0,) * (L - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def _mul_trunc(a, b, L):
    """Truncated product of integer coefficient sequences, exactly.

    Kronecker substitution: evaluate both at 2^W for W past any result
    coefficient, multiply as integers, read the digits back off.  Signed
    coefficients are handled by a positive/negative split.
    """
    if L == 0:
        return []
    a = list(a[:L])
    b = list(b[:L])
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * L
    W = ma.bit_length() + mb.bit_length() + L.bit_length() + 1
    W += (-W) % 8  # byte-aligned digits keep packing linear
    nbytes = W // 8

    def pack(v):
        return int.from_bytes(
            b"".join(c.to_bytes(nbytes, "little") for c in v), "little"
        )

    def unpack(n, count):
        raw = n.to_bytes(count * nbytes + 16, "little")
        return [
            int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little")
            for i in range(count)
        ]

    ap = pack([x if x > 0 else 0 for x in a])
    an = pack([-x if x < 0 else 0 for x in a])
    bp = pack([x if x > 0 else 0 for x in b])
    bn = pack([-x if x < 0 else 0 for x in b])
    pos = unpack(ap * bp + an * bn, L)
    neg = unpack(ap * bn + an * bp, L)
    return [p - q for p, q in zip(pos, neg)]


def eta_power(exponent: int, length: int, budget: int = DEFAULT_COEFF_BUDGET) -> PowerSeries:
    """Product_{n>=1} (1 - q^n)^exponent truncated to `length` terms.

    The exponent-1 series comes from the pentagonal number theorem; higher
    powers by binary powering.
    """
    if exponent < 1 or length < 1:
        raise ValueError("exponent and length must be positive")
    if length > budget:
        raise ResourceError(
            f"requested length {length} exceeds coefficient budget {budget}"
        )
    coeffs = [0] * length
    coeffs[0] = 1
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        e2 = j * (3 * j + 1) // 2
        if e1 >= length and e2 >= length:
            break
        s = -1 if j % 2 else 1
        if e1 < length:
            coeffs[e1] = s
        if e2 < length:
            coeffs[e2] = s
        j += 1
    eta = PowerSeries(tuple(coeffs))
    return eta if exponent == 1 else eta.pow(exponent)


def eisenstein_series(weight: int, length: int) -> PowerSeries:
    """Normalized E_4 or E_6 (constant term 1), exact integer coefficients."""
    if weight not in (4, 6):
        raise ValueError("only weights 4 and 6 are provided")
    mult = 240 if weight == 4 else -504
    r = weight - 1
    sig = [0] * length
    for d in range(1, length):
        dr = d**r
        for m in range(d, length, d):
            sig[m] += dr
    coeffs = [mult * s for s in sig]
    coeffs[0] = 1
    return PowerSeries(tuple(coeffs))


# ----------------------------------------------------------------------------
# newforms


@dataclass(eq=False)
class Newform:
    """Primitive cusp form data: weight, level, nebentypus, a_1..a_L exact."""

    weight: int
    level: int
    nebentypus: DirichletCharacter
    coefficients: tuple  # a_1 .. a_L, ints or Fractions
    is_validated: bool = False
    name: str | None = None

    def __post_init__(self):
        if self.weight < 1 or self.level < 1:
            raise ConsistencyError("weight and level must be positive")
        if not self.coefficients:
            raise ConsistencyError("coefficient list must be nonempty")
        if self.coefficients[0] != 1:
            raise NormalizationError("primitive forms must have a_1 = 1")
        if self.level % self.nebentypus.modulus:
            raise ConsistencyError(
                f"nebentypus modulus {self.nebentypus.modulus} does not divide level {self.level}"
            )

    @property
    def coefficient_count(self) -> int:
        return len(self.coefficients)

    def a(self, n: int):
        """The Fourier coefficient a_n (1-based)."""
        if n < 1 or n > len(self.coefficients):
            raise RangeError(
                f"a_{n} outside stored range 1..{len(self.coefficients)}", needed=n
            )
        return self.coefficients[n - 1]


def delta_newform(length: int, budget: int = DEFAULT_COEFF_BUDGET) -> Newform:
    """The weight-12 level-1 form with a_n = tau(n), from q * eta^24."""
    if length < 1:
        raise ValueError("length must be positive")
    eta24 = eta_power(24, length, budget=budget)
    return Newform(
        weight=12,
        level=1,
        nebentypus=trivial_character(1),
        coefficients=eta24.coefficients[:length],
        name="delta",
    )


def level_one_form(name: str, length: int, budget: int = DEFAULT_COEFF_BUDGET) -> Newform:
    """Built-in level-1 rational eigenforms: delta, e4delta (k=16), e6delta (k=18).

    S_16 and S_18 are one-dimensional, so Delta*E_4 and Delta*E_6 are the
    normalized eigenforms of those weights.
    """
    if name == "delta":
        return delta_newform(length, budget=budget)
    if name in ("e4delta", "e6delta"):
        weight = 16 if name == "e4delta" else 18
        ew = 4 if name == "e4delta" else 6
        eta24 = eta_power(24, length, budget=budget)
        prod = PowerSeries(eta24.coefficients) * eisenstein_series(ew, length)
        return Newform(
            weight=weight,
            level=1,
            nebentypus=trivial_character(1),
            coefficients=prod.coefficients[:length],
            name=name,
        )
    raise ValueError(f"unknown built-in form {name!r}")


_FORM_CACHE: dict = {}
BUILTIN_FORMS = ("delta", "e4delta", "e6delta")


def cached_level_one_form(name: str, length: int) -> Newform:
    """level_one_form with a grow-on-demand cache, pre-validated."""
    have = _FORM_CACHE.get(name)
    if have is None or have.coefficient_count < length:
        grow = max(length, 256)
        if have is not None:
            grow = max(grow, 2 * have.coefficient_count)
        have = level_one_form(name, grow)
        report = hecke_validate(have)
        if not report.ok:
            raise ConsistencyError(f"built-in form {name} failed validation")
        _FORM_CACHE[name] = have
    if have.coefficient_count == length:
        return have
    out = Newform(
        weight=have.weight,
        level=have.level,
        nebentypus=have.nebentypus,
        coefficients=have.coefficients[:length],
        is_validated=True,
        name=name,
    )
    return out


# ----------------------------------------------------------------------------
# JSON interchange

_REQUIRED_FIELDS = ("weight", "level", "coefficients")


def load_newform(source) -> Newform:
    """Parse a newform JSON document (bytes, str, or binary stream).

    Document format: {"weight": int, "level": int,
    "nebentypus": {"modulus": int, "values_on_generators": [int, ...]}  (optional;
    omitted means trivial), "coefficients": [int or "p/q" string, ...]} with the
    coefficient array 1-based.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", location=f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    for f in _REQUIRED_FIELDS:
        if f not in doc:
            raise ParseError(f"missing required field {f!r}")
    weight, level = doc["weight"], doc["level"]
    if not isinstance(weight, int) or not isinstance(level, int):
        raise ParseError("weight and level must be integers")
    raw = doc["coefficients"]
    if not isinstance(raw, list) or not raw:
        raise ParseError("coefficients must be a nonempty array")
    coeffs = []
    for i, c in enumerate(raw):
        if isinstance(c, int):
            coeffs.append(c)
        elif isinstance(c, str):
            try:
                frac = Fraction(c)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational {c!r}", location=f"coefficient {i + 1}") from exc
            coeffs.append(int(frac) if frac.denominator == 1 else frac)
        else:
            raise ParseError("coefficients must be integers or 'p/q' strings",
                             location=f"coefficient {i + 1}")
    if coeffs[0] != 1:
        raise NormalizationError(f"a_1 = {coeffs[0]}, expected 1")
    neb = doc.get("nebentypus")
    if neb is None:
        nebentypus = trivial_character(1)
    else:
        if not isinstance(neb, dict) or "modulus" not in neb:
            raise ParseError("nebentypus must be an object with a modulus")
        modulus = neb["modulus"]
        values = neb.get("values_on_generators", [])
        nebentypus = make_character(modulus, values)
    if level % nebentypus.modulus:
        raise ConsistencyError(
            f"nebentypus modulus {nebentypus.modulus} does not divide level {level}"
        )
    return Newform(
        weight=weight,
        level=level,
        nebentypus=nebentypus,
        coefficients=tuple(coeffs),
        is_validated=False,
    )


def serialize_newform(f: Newform) -> str:
    """Inverse of load_newform; load_newform(serialize_newform(f)) == f."""
    doc = {"weight": f.weight, "level": f.level}
    if not f.nebentypus.is_trivial or f.nebentypus.modulus != 1:
        gens = unit_group_generators(f.nebentypus.modulus)
        exps = [int(t * d) for t, (_, d) in zip(f.nebentypus.generator_values, gens)]
        doc["nebentypus"] = {"modulus": f.nebentypus.modulus, "values_on_generators": exps}
    doc["coefficients"] = [
        c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"
        for c in f.coefficients
    ]
    return json.dumps(doc)


# ----------------------------------------------------------------------------
# Hecke validation


@dataclass
class HeckeReport:
    """Result of checking the Hecke relations on a stored coefficient range."""

    checked_multiplicative: int
    checked_prime_power: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def _primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, v in enumerate(sieve) if v]


def hecke_validate(f: Newform) -> HeckeReport:
    """Check a_{mn} = a_m a_n (coprime m, n) and the prime-power recurrence.

    The recurrence is a_{p^{r+1}} = a_p a_{p^r} - omega(p) p^{k-1} a_{p^{r-1}},
    with omega(p) = 0 at p | N.  Violations are reported, not raised; on a
    clean report the form is marked validated.

    The nebentypus value enters exactly.  When omega(p) is a nonreal root of
    unity and the coefficients are rational, the relation splits into its
    rational and omega-parts, which must vanish separately.
    """
    L = f.coefficient_count
    if L < 4:
        raise RangeError("need at least 4 coefficients to validate", needed=4)
    violations = []
    a = f.a
    n_mult = 0
    for m in range(2, L + 1):
        for n in range(m, L // m + 1):
            if math.gcd(m, n) != 1:
                continue
            n_mult += 1
            if a(m * n) != a(m) * a(n):
                violations.append(("multiplicative", m, n))
    n_pp = 0
    pk1 = f.weight - 1
    for p in _primes_up_to(L):
        t = f.nebentypus.value_exact(p)
        omega_zero = (f.level % p == 0) or t is None
        r = 1
        while p ** (r + 1) <= L:
            n_pp += 1
            lhs = a(p ** (r + 1)) - a(p) * a(p**r)
            if omega_zero:
                ok = lhs == 0
            elif t.denominator <= 2:
                w = 1 if t == 0 else -1
                ok = lhs == -w * p**pk1 * a(p ** (r - 1))
            else:
                # nonreal omega(p): 1 and omega(p) are Q-independent
                ok = lhs == 0 and a(p ** (r - 1)) == 0
            if not ok:
                violations.append(("prime-power", p, r))
            r += 1
    report = HeckeReport(n_mult, n_pp, violations)
    if report.ok:
        f.is_validated = True
    return report

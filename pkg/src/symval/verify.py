"""Verification harnesses: continued-fraction rational recognition, the
period-cancelling ratio tests, twisted-value tests, and the dihedral
value-level consistency check.

Recognition is falsifiable but never over-claims: a test result is "pass"
only when recognition succeeds and is stable under recomputation at doubled
precision, "fail" only when two precisions stably recognize different
values (or a residual that should vanish does not), and "inconclusive"
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp

from . import analytic
from .analytic import dirichlet_series_value, evaluate, spec_for_symn
from .characters import DirichletCharacter, gauss_sum, trivial_character
from .critical import NON_CANCELLING, critical_set, ratio_exponent
from .dihedral import CMForm
from .errors import DomainError
from .qseries import Newform
from .satake import dirichlet_coeffs

__all__ = [
    "RecognitionResult",
    "VerificationReport",
    "recognize_rational",
    "deligne_ratio_test",
    "twist_test",
    "dihedral_value_test",
]


@dataclass
class RecognitionResult:
    input: object
    recognized: Fraction | None
    height: int | None
    stable: bool
    precision: int
    conflict: Fraction | None = None  # different stable recognition at 2x bits

    @property
    def ok(self) -> bool:
        return self.recognized is not None and self.stable


def _cf_convergent(x, max_height: int, precision: int):
    """Best continued-fraction convergent p/q with q <= max_height."""
    eps_match = mpmath.mpf(2) ** (-precision + 12)
    if abs(x) < eps_match:
        return Fraction(0, 1)
    a0 = int(mpmath.floor(x))
    p_prev, q_prev = 1, 0
    p, q = a0, 1
    frac = x - a0
    while True:
        if abs(x - mpmath.mpf(p) / q) <= eps_match * max(1, abs(x)):
            return Fraction(p, q)
        if frac == 0:
            return None
        frac = 1 / frac
        a = int(mpmath.floor(frac))
        frac -= a
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        if q > max_height:
            return None


def recognize_rational(
    x, max_height: int = 10**30, precision: int = 150, recompute=None
) -> RecognitionResult:
    """Recognize x as a rational of bounded height from its convergents.

    The recognized value must match x to within 2^(-precision/2) (asserted);
    stability means the recomputation callback, run at doubled precision,
    recognizes the same rational.  A *different* stable recognition at the
    doubled precision is recorded in .conflict (that is what downstream
    tests report as a failure).
    """
    if precision < 64:
        raise DomainError("recognition needs at least 64 bits")
    with mp.workprec(precision + 16):
        xm = analytic._to_mp(x)
        if isinstance(xm, mpmath.mpc):
            if abs(xm.imag) > mpmath.mpf(2) ** (-(precision // 2)) * (1 + abs(xm)):
                return RecognitionResult(xm, None, None, False, precision)
            xm = xm.real
        cand = _cf_convergent(xm, max_height, precision)
        if cand is not None:
            err = abs(xm - mpmath.mpf(cand.numerator) / max(cand.denominator, 1))
            # the error bound scales with |x|: a value of size 2^e computed to
            # p relative bits carries p - e absolute bits
            if err >= mpmath.mpf(2) ** (-(precision // 2)) * max(1, abs(xm)):
                cand = None
    if cand is None:
        return RecognitionResult(x, None, None, False, precision)
    stable, conflict = recompute is None, None
    if recompute is not None:
        with mp.workprec(2 * precision + 16):
            x2 = analytic._to_mp(recompute(2 * precision))
            if isinstance(x2, mpmath.mpc):
                x2 = x2.real
            cand2 = _cf_convergent(x2, max_height, 2 * precision)
        stable = cand2 == cand
        if not stable:
            conflict = cand2
    result = RecognitionResult(
        x, cand, max(abs(cand.numerator), cand.denominator), stable, precision, conflict
    )
    with mp.workprec(precision + 16):
        xm = analytic._to_mp(x)
        err = abs(xm - mpmath.mpf(cand.numerator) / cand.denominator)
        assert err < mpmath.mpf(2) ** (-(precision // 2)) * max(
            1, abs(xm)
        ), "recognized value outside error bound"
    return result


@dataclass
class VerificationReport:
    test: str
    inputs: dict
    items: list
    status: str  # pass | inconclusive | fail
    precision: int

    def to_dict(self) -> dict:
        return {
            "test": self.test,
            "inputs": self.inputs,
            "items": self.items,
            "status": self.status,
            "precision": self.precision,
        }


def _combine_status(statuses) -> str:
    if any(s == "fail" for s in statuses):
        return "fail"
    if any(s == "inconclusive" for s in statuses):
        return "inconclusive"
    return "pass" if statuses else "inconclusive"


# ---------------------------------------------------------------------------
# Deligne ratio tests


def deligne_ratio_test(
    form,
    n: int,
    pairs,
    precision: int = 150,
    height_cap: int = 10**30,
) -> VerificationReport:
    """Period-free rationality test for ratios of critical values.

    For each period-cancelling pair (m1, m2) the folded ratio
    L(m1)/L(m2) / (2 pi i)^E is computed and recognized as a rational;
    recognition is confirmed at doubled precision.  Pairs whose c^+/c^-
    exponents do not cancel are rejected.
    """
    spec150 = spec_for_symn(form, n)
    k = _weight_of(form)
    cs = critical_set(n, k)
    checked_pairs = []
    for m1, m2 in pairs:
        fold = ratio_exponent(n, m1, m2, k)
        if fold == NON_CANCELLING:
            raise DomainError(f"pair ({m1}, {m2}) does not cancel the periods")
        checked_pairs.append((m1, m2, fold))
    cache: dict = {}

    def lvalue(m, prec):
        key = (m, prec)
        if key not in cache:
            cache[key] = evaluate(spec150, m, prec).value
        return cache[key]

    def folded_ratio(m1, m2, E, prec):
        with mp.workprec(prec + 16):
            v1, v2 = lvalue(m1, prec), lvalue(m2, prec)
            if abs(v2) < mpmath.mpf(2) ** (-prec // 2):
                if abs(v1) < mpmath.mpf(2) ** (-prec // 2):
                    return None
                return None  # ratio against a (trivial) zero: caller flips
            r = v1 / v2 * mpmath.power(2 * mpmath.pi, -E)
            # fold i^-E: E is even in every level-one case (k even)
            if E % 2:
                r = r * mpmath.mpc(0, -1) ** E
            else:
                r = r * (-1) ** ((E // 2) % 2)
            return r

    items = []
    statuses = []
    for m1, m2, (E, gmult) in checked_pairs:
        ordered = (m1, m2, E)
        probe = folded_ratio(m1, m2, E, precision)
        if probe is None:
            # denominator vanished; try the flipped ratio
            E2, _ = ratio_exponent(n, m2, m1, k)
            probe = folded_ratio(m2, m1, E2, precision)
            ordered = (m2, m1, E2)
        if probe is None:
            items.append(
                {"pair": [m1, m2], "exponent": E, "recognized": None,
                 "value": None, "status": "inconclusive",
                 "note": "both values vanish at this precision"}
            )
            statuses.append("inconclusive")
            continue
        a, b, Eo = ordered
        # a value of size 2^e carries only precision - e absolute bits, so
        # the recognition precision scales with the magnitude (the height
        # cap is still enforced on the recognized rational)
        rec_prec = precision
        with mp.workprec(64):
            mag = abs(probe)
            if mag > 4:
                rec_prec = precision + int(mpmath.log(mag, 2)) + 32
        if rec_prec != precision:
            probe = folded_ratio(a, b, Eo, rec_prec)
        rec = recognize_rational(
            probe,
            max_height=height_cap,
            precision=rec_prec,
            recompute=lambda p, _a=a, _b=b, _E=Eo: folded_ratio(_a, _b, _E, p),
        )
        status = "pass" if rec.ok else ("fail" if rec.conflict is not None else "inconclusive")
        items.append(
            {
                "pair": [m1, m2],
                "exponent": E,
                "gauss_multiplicity": gmult,
                "value": mpmath.nstr(probe, 30),
                "recognized": str(rec.recognized) if rec.recognized is not None else None,
                "stable": rec.stable,
                "status": status,
            }
        )
        statuses.append(status)
    return VerificationReport(
        test="deligne-ratio",
        inputs={"form": _name_of(form), "n": n, "pairs": [[a, b] for a, b, _ in checked_pairs]},
        items=items,
        status=_combine_status(statuses),
        precision=precision,
    )


def _weight_of(form) -> int:
    if isinstance(form, str):
        from .qseries import cached_level_one_form

        return cached_level_one_form(form, 16).weight
    return form.weight


def _name_of(form) -> str:
    if isinstance(form, str):
        return form
    return form.name or f"form(k={form.weight},N={form.level})"


# ---------------------------------------------------------------------------
# twist tests


def twist_test(
    form,
    n: int,
    eta: DirichletCharacter,
    m: int,
    precision: int = 150,
    height_cap: int = 10**30,
) -> VerificationReport:
    """Test the conjectured Gauss-sum shape of twisted critical values.

    Even eta: L(m, Sym^n f, eta) ~ g(eta)^E L(m, Sym^n f) with
    E = ceil((n+1)/2), except E = n/2 for even n at odd m.  Odd eta: the
    comparison point moves to m+1 or m-1 (whichever is critical; both are
    reported when both are) and each Gauss sum carries a power of
    (2 pi i)^(-sigma); exponent n/2+1 or n/2 (even n, by side of center),
    (n+1)/2 (odd n, k >= 3).  Recognition is attempted in Q for real eta
    and componentwise against {1, i} for order-4 eta.
    """
    if eta.conductor != eta.modulus:
        raise DomainError("twist character must be primitive")
    if eta.order > 4:
        raise DomainError("recognition implemented for twists of order <= 4 only")
    k = _weight_of(form)
    spec_tw = spec_for_symn(form, n, eta)
    spec_un = spec_for_symn(form, n)
    cs = set(critical_set(n, k).members)
    twisted_critical = set(
        analytic.regular_integers(spec_tw, -3, spec_tw.motivic_weight + 3)
    )
    if m not in twisted_critical:
        raise DomainError(f"m = {m} is not critical for the twisted L-function")
    center = Fraction(n * (k - 1) + 1, 2)
    cases = []
    if not eta.is_odd:
        if m not in cs:
            raise DomainError("even twist: m must be critical for the untwisted function")
        E = n // 2 if (n % 2 == 0 and m % 2 == 1) else math.ceil((n + 1) / 2)
        cases.append({"sigma": 0, "gauss_exponent": E, "m_untwisted": m})
    else:
        if n % 2 == 1 and k < 3:
            raise DomainError("odd twist of odd n requires weight k >= 3")
        if n % 2 == 0:
            E = n // 2 + 1 if m > center else n // 2
        else:
            E = (n + 1) // 2
        for sigma in (1, -1):
            if m + sigma in cs:
                cases.append({"sigma": sigma, "gauss_exponent": E, "m_untwisted": m + sigma})
        if not cases:
            raise DomainError(f"neither m+1 nor m-1 is critical for the untwisted function")

    def ratio(case, prec):
        with mp.workprec(prec + 32):
            gv = gauss_sum(eta, prec + 32).value
            num = evaluate(spec_tw, m, prec).value
            den_l = evaluate(spec_un, case["m_untwisted"], prec).value
            E = case["gauss_exponent"]
            scale = mpmath.power(gv, E)
            if case["sigma"]:
                scale *= mpmath.power(2 * mpmath.pi * mpmath.mpc(0, 1), -case["sigma"] * E)
            den = scale * den_l
            if abs(den) < mpmath.mpf(2) ** (-prec // 2):
                return None
            return num / den

    items = []
    statuses = []
    for case in cases:
        val = ratio(case, precision)
        if val is None:
            items.append({**case, "status": "inconclusive", "note": "comparison value vanishes"})
            statuses.append("inconclusive")
            continue
        if eta.order <= 2:
            rec = recognize_rational(
                val, height_cap, precision, recompute=lambda p, _c=case: ratio(_c, p)
            )
            status = "pass" if rec.ok else (
                "fail" if rec.conflict is not None else "inconclusive"
            )
            items.append(
                {
                    **case,
                    "value": mpmath.nstr(val, 30),
                    "recognized": str(rec.recognized) if rec.recognized is not None else None,
                    "stable": rec.stable,
                    "status": status,
                }
            )
        else:
            # order-4 eta: recognize the coordinates against the basis {1, i}
            rec_re = recognize_rational(
                mpmath.re(val), height_cap, precision,
                recompute=lambda p, _c=case: mpmath.re(ratio(_c, p)),
            )
            rec_im = recognize_rational(
                mpmath.im(val), height_cap, precision,
                recompute=lambda p, _c=case: mpmath.im(ratio(_c, p)),
            )
            both = rec_re.ok and rec_im.ok
            status = "pass" if both else "inconclusive"
            items.append(
                {
                    **case,
                    "value": mpmath.nstr(val, 30),
                    "recognized": [
                        str(rec_re.recognized) if rec_re.recognized is not None else None,
                        str(rec_im.recognized) if rec_im.recognized is not None else None,
                    ],
                    "status": status,
                }
            )
        statuses.append(items[-1]["status"])
    return VerificationReport(
        test="twist",
        inputs={"form": _name_of(form), "n": n, "eta": eta.label(), "m": m},
        items=items,
        status=_combine_status(statuses),
        precision=precision,
    )


# ---------------------------------------------------------------------------
# dihedral value-level test


def dihedral_value_test(
    phi: CMForm, n: int, m: int, precision: int = 192
) -> VerificationReport:
    """Compare the two evaluations of L(m, Sym^n phi_chi) in the
    convergence region: the symmetric-power Euler product directly versus
    the product of its isobaric constituents at shifted arguments, all as
    partial L-functions over the same excluded prime set (the level).
    """
    chi = phi.character
    f = phi.form
    k = chi.weight
    even = n % 2 == 0
    r = n // 2 if even else (n - 1) // 2
    K = chi.field
    omega_k = K.quadratic_character()
    chi_q = (f.nebentypus * omega_k.induce(f.level)) if f.level % abs(K.D) == 0 else None
    if chi_q is None:
        raise DomainError("level must absorb the field discriminant")

    lhs_provider = analytic._coeff_cache(
        lambda L: dirichlet_coeffs(_grown(phi, L), n, None, L, bad_prime_mode="partial")
    )
    with mp.workprec(precision + 48):
        lhs, lhs_tail = dirichlet_series_value(
            lhs_provider, m, n * (k - 1), precision
        )
        rhs = mpmath.mpf(1)
        rhs_tail = mpmath.mpf(0)
        if even:
            ab = chi_q**r
            ab_provider = lambda L, _c=ab: [
                _chi_val(_c, j) for j in range(1, L + 1)
            ]
            v, t = dirichlet_series_value(ab_provider, m - r * (k - 1), 0, precision)
            rhs *= v
            rhs_tail += t
        from .dihedral import cm_newform

        for a in range(r if even else r + 1):
            j = 2 * (r - a) if even else 2 * (r - a) + 1
            chij = chi.power(j)
            twist = (chi_q**a).induce(f.level)

            def prov(L, _j=j, _tw=twist):
                form_j = cm_newform(chi.power(_j), max(L, 16)).form
                return dirichlet_coeffs(form_j, 1, _tw, L, bad_prime_mode="partial")

            v, t = dirichlet_series_value(
                prov, m - a * (k - 1), j * (k - 1) + 0, precision
            )
            rhs *= v
            rhs_tail += t
        diff = abs(lhs - rhs)
        tol = mpmath.mpf(2) ** (-(precision // 2))
        agreed = diff < tol + lhs_tail + rhs_tail
    status = "pass" if agreed else "fail"
    return VerificationReport(
        test="dihedral-value",
        inputs={"form": _name_of(f), "n": n, "m": m},
        items=[
            {
                "lhs": mpmath.nstr(lhs, 30),
                "rhs": mpmath.nstr(rhs, 30),
                "difference": mpmath.nstr(diff, 6),
                "tolerance": mpmath.nstr(tol, 6),
                "status": status,
            }
        ],
        status=status,
        precision=precision,
    )


def _chi_val(chi, j):
    t = chi.value_exact(j)
    if t is None:
        return 0
    if t.denominator <= 2:
        return 1 if t == 0 else -1
    return chi.value(j, 220)


def _grown(phi: CMForm, L: int) -> Newform:
    if phi.form.coefficient_count >= L:
        return phi.form
    from .dihedral import cm_newform

    grown = cm_newform(phi.character, L)
    phi.form = grown.form
    return phi.form

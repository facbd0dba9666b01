import mpmath
import pytest
from mpmath import mp

from symval import analytic as an
from symval import critical as cr
from symval.characters import make_character, trivial_character
from symval.errors import DomainError, ResolutionError


# ---------------------------------------------------------------------------
# spec construction and regular integers


def test_zeta_regular_integers(zeta):
    regs = an.regular_integers(zeta, -10, 10)
    assert regs == [m for m in range(-10, 11) if cr.zeta_critical(m)]


def test_symn_gamma_data():
    s1 = an.spec_for_symn("delta", 1)
    assert s1.gamma_shifts == (("C", 0),)
    assert s1.motivic_weight == 11
    assert an.regular_integers(s1, -5, 20) == list(range(1, 12))

    s3 = an.spec_for_symn("delta", 3)
    assert s3.gamma_shifts == (("C", 0), ("C", -11))
    assert an.regular_integers(s3, 0, 40) == list(range(12, 23))

    s2 = an.spec_for_symn("delta", 2)
    assert ("R", -10) in s2.gamma_shifts  # the parity the critical set forces
    assert an.regular_integers(s2, -5, 30) == list(cr.critical_set(2, 12).members)


def test_regular_equals_critical_across_weights():
    for name, k in (("delta", 12), ("e4delta", 16), ("e6delta", 18)):
        for n in range(1, 9):
            spec = an.spec_for_symn(name, n)
            w = spec.motivic_weight
            assert an.regular_integers(spec, -3, w + 3) == list(
                cr.critical_set(n, k).members
            )


def test_twist_compatibility_trivial():
    plain = an.spec_for_symn("delta", 2)
    twisted = an.spec_for_symn("delta", 2, trivial_character(1))
    assert twisted.gamma_shifts == plain.gamma_shifts
    assert twisted.conductor == plain.conductor == 1
    assert twisted.coefficients(16) == plain.coefficients(16)


def test_twisted_spec_data():
    chi = make_character(5, [2])
    tw = an.spec_for_symn("delta", 2, chi)
    assert tw.conductor == 125
    assert tw.self_dual
    chi4 = make_character(4, [1])  # odd: Gamma_R parity flips
    tw4 = an.spec_for_symn("delta", 2, chi4)
    assert ("R", -11) in tw4.gamma_shifts
    regs = an.regular_integers(tw4, 0, 23)
    assert regs == [2, 4, 6, 8, 10, 13, 15, 17, 19, 21]


def test_spec_rejects_level():
    from symval import dihedral as dh

    K = dh.ImagQuadField(-4)
    chi = dh.HeckeCharacter(K, 1, dh.parse_conductor("(1+i)^3", K))
    f = dh.cm_newform(chi, 64).form
    with pytest.raises(DomainError):
        an.spec_for_symn(f, 1)


# ---------------------------------------------------------------------------
# evaluation against classical values


def test_zeta_classical_values(zeta):
    v = an.evaluate(zeta, 2, 160)
    with mp.workprec(180):
        assert abs(v.value - mpmath.pi**2 / 6) < mpmath.mpf(2) ** -150
        assert v.truncation_error_bound < mpmath.mpf(2) ** -80
    v = an.evaluate(zeta, -1, 160)
    with mp.workprec(180):
        assert abs(v.value + mpmath.mpf(1) / 12) < mpmath.mpf(2) ** -150


def test_zeta_against_mpmath(zeta):
    for s in (3, mpmath.mpf("2.5"), mpmath.mpc("0.5", "3.0")):
        v = an.evaluate(zeta, s, 140)
        with mp.workprec(160):
            assert abs(v.value - mpmath.zeta(s)) < mpmath.mpf(2) ** -120


def test_zeta_trivial_zero(zeta):
    v = an.evaluate(zeta, -2, 120)
    assert v.value == 0


def test_dirichlet_l_classical():
    # class number formulas: L(1, chi_5) = 2 log(golden)/sqrt(5),
    # L(1, chi_-4) = pi/4
    spec5 = an.dirichlet_l_spec(make_character(5, [2]))
    v = an.evaluate(spec5, 1, 140)
    with mp.workprec(160):
        want = 2 * mpmath.log((1 + mpmath.sqrt(5)) / 2) / mpmath.sqrt(5)
        assert abs(v.value - want) < mpmath.mpf(2) ** -120
    spec4 = an.dirichlet_l_spec(make_character(4, [1]))
    v = an.evaluate(spec4, 1, 140)
    with mp.workprec(160):
        assert abs(v.value - mpmath.pi / 4) < mpmath.mpf(2) ** -120


def test_delta_against_direct_sum(sym_spec):
    s1 = sym_spec(1)
    v = an.evaluate(s1, 25, 160)
    direct, tail = an.dirichlet_series_value(s1.coefficients, 25, 11, 160)
    with mp.workprec(180):
        assert abs(v.value - direct) < mpmath.mpf(2) ** -140 + tail


def test_sym2_against_direct_sum(sym_spec):
    s2 = sym_spec(2)
    v = an.evaluate(s2, 30, 140)
    direct, tail = an.dirichlet_series_value(s2.coefficients, 30, 22, 140)
    with mp.workprec(160):
        assert abs(v.value - direct) < mpmath.mpf(2) ** -115 + tail


def test_precision_monotone(sym_spec):
    s2 = sym_spec(2)
    lo = an.evaluate(s2, 13, 120)
    hi = an.evaluate(s2, 13, 240)
    with mp.workprec(260):
        assert abs(lo.value - hi.value) < lo.truncation_error_bound + mpmath.mpf(2) ** -118


def test_root_numbers(zeta, sym_spec):
    assert zeta.root_number == 1
    assert sym_spec(1).root_number == 1
    assert sym_spec(2).root_number == 1
    assert sym_spec(3).root_number == -1  # archimedean sign forces this
    assert sym_spec(4).root_number == 1


def test_fe_selfcheck_zeta(zeta):
    r = an.fe_selfcheck(zeta, [mpmath.mpf("0.8"), mpmath.mpc("0.5", "2"), 3], 160)
    assert r < mpmath.mpf(2) ** -80


def test_fe_selfcheck_wrong_sign():
    bad = an.zeta_spec()
    bad.root_number = -1
    r = an.fe_selfcheck(bad, [mpmath.mpf("0.6")], 120)
    assert r > mpmath.mpf("0.5")  # sign flip shows up at full size


def test_resolution_failure_on_corrupt_coefficients():
    spec = an.zeta_spec()
    coeffs = spec.coefficients

    def corrupted(L):
        out = [1] * L
        if L >= 2:
            out[1] = 5  # not a Dirichlet series with this gamma data
        return out

    bad = an.LFunctionSpec(
        degree=1,
        conductor=1,
        gamma_shifts=(("R", 0),),
        motivic_weight=0,
        coefficients=corrupted,
        self_dual=True,
        poles=((1, 1), (0, -1)),
    )
    with pytest.raises(ResolutionError):
        an.resolve_root_number(bad, precision=120)


def test_central_zero_of_sym3(sym_spec):
    # root number -1 makes the central value vanish
    s3 = sym_spec(3)
    v = an.evaluate(s3, 17, 140)
    with mp.workprec(150):
        assert abs(v.value) < mpmath.mpf(2) ** -100


def test_dirichlet_series_value_domain(sym_spec):
    with pytest.raises(DomainError):
        an.dirichlet_series_value(sym_spec(1).coefficients, 6, 11, 120)
